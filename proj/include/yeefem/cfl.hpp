// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_CFL_HPP
#define YEEFEM_CFL_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "yeefem/block_diag.hpp"
#include "yeefem/mesh.hpp"
#include "yeefem/sparse.hpp"

namespace yeefem
{

struct CflOptions
{
  // Operator applications allowed per eigenvalue solve.
  int max_iterations = 300;
  int krylov_dim = 40;
  double eig_tol = 1e-10;
  double bisection_rtol = 1e-6;
  int max_bisections = 60;
  std::uint64_t seed = 20240607;
};

struct EigenEstimate
{
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> vector;
};

using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

// Largest eigenvalue of the pencil (A, M) for symmetric A and block SPD M, by
// restarted Lanczos in the M inner product with full reorthogonalization.
// Throws EstimationError when the iteration budget runs out.
EigenEstimate largest_pencil_eigenvalue(const LinearOperator &a, const BlockDiagMatrix &m,
                                        const BlockDiagMatrix &minv, const CflOptions &opt,
                                        const std::vector<double> *start = nullptr);

struct CflEstimate
{
  double tau_max = 0.0;
  int bisections = 0;
  long operator_applications = 0;
};

// Upper end of the bisection bracket, 2 h sqrt(eps_max / nu_min).
double cfl_bracket(const Mesh &m, const MaterialField &mat);

// Largest tau with tau^2/4 K + s gamma tau/2 (Mhat_sigma - M_sigma) <= M_eps / 2 for s = +-1.
CflEstimate estimate_tau_max(const BlockDiagMatrix &meps, const SparseMatrix &msigma,
                             const SparseMatrix &mhat_sigma, const SparseMatrix &k, int gamma,
                             double upper, const CflOptions &opt = {});

}  // namespace yeefem

#endif  // YEEFEM_CFL_HPP
