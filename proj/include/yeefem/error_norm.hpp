// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_ERROR_NORM_HPP
#define YEEFEM_ERROR_NORM_HPP

#include <span>
#include <vector>

#include "yeefem/femcore.hpp"
#include "yeefem/mesh.hpp"
#include "yeefem/simulation.hpp"
#include "yeefem/sparse.hpp"

namespace yeefem
{

//
// Streaming evaluation of
//   |||A - Ref||| = max_n |d(A - Ref)|_L2 / max_n |d Ref|_L2
//                 + max_n |curl avg(A - Ref)|_L2 / max_n |curl avg Ref|_L2
// over consecutive pairs of a common time grid, with d the difference
// quotient and avg the mean of the pair. Samples are full-space vectors on
// one mesh and are fed one time level at a time.
//
class ErrorAccumulator
{
public:
  explicit ErrorAccumulator(const Mesh &m);

  void sample(std::span<const double> a, std::span<const double> ref, double tau);

  double dt_error() const { return dt_err_; }
  double dt_reference() const { return dt_ref_; }
  double curl_error() const { return curl_err_; }
  double curl_reference() const { return curl_ref_; }
  long pairs() const { return pairs_; }
  // Throws ContractError when the reference vanishes identically.
  double value() const;

  const SparseMatrix &mass() const { return mass_; }
  const SparseMatrix &curl_form() const { return k_; }

private:
  SparseMatrix mass_;
  SparseMatrix k_;
  std::vector<double> prev_a_, prev_ref_, w_;
  bool has_prev_ = false;
  long pairs_ = 0;
  double dt_err_ = 0.0, dt_ref_ = 0.0, curl_err_ = 0.0, curl_ref_ = 0.0;
};

// Records with stored trajectories. The record on the coarser mesh is
// transferred to the finer one, and the trajectory with the smaller time step
// is subsampled on the coarser grid (the step ratio must be an integer).
double error_norm(const SolutionRecord &a, const SolutionRecord &ref);

}  // namespace yeefem

#endif  // YEEFEM_ERROR_NORM_HPP
