// SPDX-License-Identifier: Apache-2.0

#include "yeefem/errors.hpp"

namespace yeefem
{

ParseError::ParseError(int line, const std::string &what)
  : Error("line " + std::to_string(line) + ": " + what), line_(line)
{
}

SingularBlockError::SingularBlockError(int vertex, double min_eigenvalue)
  : Error("mass block at vertex " + std::to_string(vertex) +
          " is not positive definite (smallest eigenvalue " +
          std::to_string(min_eigenvalue) + ")"),
    vertex_(vertex), min_eigenvalue_(min_eigenvalue)
{
}

EstimationError::EstimationError(const std::string &what, double residual)
  : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual)
{
}

DivergenceError::DivergenceError(long step, const std::string &what,
                                 std::vector<double> energy_trace)
  : Error("step " + std::to_string(step) + ": " + what), step_(step), detail_(what),
    energy_trace_(std::move(energy_trace))
{
}

}  // namespace yeefem
