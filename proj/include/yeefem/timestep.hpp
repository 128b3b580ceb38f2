// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_TIMESTEP_HPP
#define YEEFEM_TIMESTEP_HPP

#include <span>
#include <vector>

#include "yeefem/block_diag.hpp"
#include "yeefem/femcore.hpp"
#include "yeefem/sparse.hpp"

namespace yeefem
{

// Two consecutive leapfrog iterates E^{n-1}, E^n.
struct TimeStepState
{
  Space space = Space::Full;
  std::vector<double> prev;
  std::vector<double> curr;
  double tau = 0.0;
  long n = 1;

  double time() const { return static_cast<double>(n) * tau; }
  void check() const;
};

// Zero state E^0 = E^1 = 0, positioned at n = 1.
TimeStepState zero_state(Space space, int size, double tau);

// Scratch vectors reused across steps.
struct StepWorkspace
{
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
  void resize(std::size_t n);
};

// E^{n+1} = 2E^n - E^{n-1} + tau^2 Minv (load - Mhat_sigma (E^n - E^{n-1}) / tau - K E^n).
// `minv` is the inverse of M_{eps + tau sigma / 2}.
void step_full(TimeStepState &s, const BlockDiagMatrix &minv, const SparseMatrix &mhat_sigma,
               const SparseMatrix &k, std::span<const double> load, StepWorkspace &ws);

// E^{n+1} = 2E^n - E^{n-1} + tau^2 (Mtilde_inv (-Msigma (E^n - E^{n-1}) / tau - K E^n) + rhs).
// `rhs` is the already inverted load, built in lifted or direct mode.
void step_reduced(TimeStepState &s, const SparseMatrix &mtilde_inv, const SparseMatrix &msigma,
                  const SparseMatrix &k, std::span<const double> rhs, StepWorkspace &ws);

// Same recursion backwards in time, for sigma = 0: returns (E^{n-2}, E^{n-1}).
void step_full_backward(TimeStepState &s, const BlockDiagMatrix &minv, const SparseMatrix &k,
                        std::span<const double> load, StepWorkspace &ws);

}  // namespace yeefem

#endif  // YEEFEM_TIMESTEP_HPP
