// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_ERRORS_HPP
#define YEEFEM_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace yeefem
{

// Base of everything the library throws on bad input or failed numerics.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error
{
public:
  ParseError(int line, const std::string &what);
  int line() const { return line_; }

private:
  int line_;
};

class ValidationError : public Error
{
public:
  using Error::Error;
};

class GeometryError : public Error
{
public:
  using Error::Error;
};

class DomainError : public Error
{
public:
  using Error::Error;
};

class ContractError : public Error
{
public:
  using Error::Error;
};

class ParameterError : public Error
{
public:
  using Error::Error;
};

class ConfigError : public Error
{
public:
  using Error::Error;
};

class LookupError : public Error
{
public:
  using Error::Error;
};

class SingularBlockError : public Error
{
public:
  SingularBlockError(int vertex, double min_eigenvalue);
  int vertex() const { return vertex_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

private:
  int vertex_;
  double min_eigenvalue_;
};

class EstimationError : public Error
{
public:
  EstimationError(const std::string &what, double residual);
  double residual() const { return residual_; }

private:
  double residual_;
};

class DivergenceError : public Error
{
public:
  DivergenceError(long step, const std::string &what, std::vector<double> energy_trace = {});
  long step() const { return step_; }
  const std::string &detail() const { return detail_; }
  // Total discrete energy per recorded step up to the failure, when known.
  const std::vector<double> &energy_trace() const { return energy_trace_; }

private:
  long step_;
  std::string detail_;
  std::vector<double> energy_trace_;
};

}  // namespace yeefem

#endif  // YEEFEM_ERRORS_HPP
