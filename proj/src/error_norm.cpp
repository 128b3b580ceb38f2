// SPDX-License-Identifier: Apache-2.0

#include "yeefem/error_norm.hpp"

#include <algorithm>
#include <cmath>

#include "yeefem/assembly.hpp"
#include "yeefem/errors.hpp"
#include "yeefem/transfer.hpp"

namespace yeefem
{

ErrorAccumulator::ErrorAccumulator(const Mesh &m)
{
  const DofMap d(m);
  const std::vector<double> ones(m.num_triangles(), 1.0);
  mass_ = assemble_consistent_mass(m, d, ones);
  k_ = assemble_stiffness(m, d, ones);
}

void ErrorAccumulator::sample(std::span<const double> a, std::span<const double> ref, double tau)
{
  const std::size_t n = mass_.rows();
  if (a.size() != n || ref.size() != n)
  {
    throw ContractError("error samples must be full-space vectors on the comparison mesh");
  }
  if (has_prev_)
  {
    w_.resize(n);
    auto norm_of = [&](const SparseMatrix &form, auto &&fill) {
      for (std::size_t i = 0; i < n; i++)
      {
        w_[i] = fill(i);
      }
      return std::sqrt(std::max(0.0, form.quadratic_form(w_)));
    };
    const double dt_e = norm_of(mass_, [&](std::size_t i) {
      return ((a[i] - ref[i]) - (prev_a_[i] - prev_ref_[i])) / tau;
    });
    const double dt_r = norm_of(mass_, [&](std::size_t i) { return (ref[i] - prev_ref_[i]) / tau; });
    const double c_e = norm_of(k_, [&](std::size_t i) {
      return 0.5 * ((a[i] - ref[i]) + (prev_a_[i] - prev_ref_[i]));
    });
    const double c_r = norm_of(k_, [&](std::size_t i) { return 0.5 * (ref[i] + prev_ref_[i]); });
    dt_err_ = std::max(dt_err_, dt_e);
    dt_ref_ = std::max(dt_ref_, dt_r);
    curl_err_ = std::max(curl_err_, c_e);
    curl_ref_ = std::max(curl_ref_, c_r);
    pairs_++;
  }
  prev_a_.assign(a.begin(), a.end());
  prev_ref_.assign(ref.begin(), ref.end());
  has_prev_ = true;
}

double ErrorAccumulator::value() const
{
  if (!(dt_ref_ > 0.0) || !(curl_ref_ > 0.0))
  {
    throw ContractError("reference solution vanishes; relative error undefined");
  }
  return dt_err_ / dt_ref_ + curl_err_ / curl_ref_;
}

double error_norm(const SolutionRecord &a, const SolutionRecord &ref)
{
  if (!a.mesh || !ref.mesh || a.trajectory.empty() || ref.trajectory.empty())
  {
    throw ContractError("error_norm needs records with stored trajectories");
  }
  const Mesh *fine = a.mesh.get();
  SparseMatrix ta, tr;
  bool move_a = false, move_ref = false;
  if (a.mesh != ref.mesh && a.mesh->num_triangles() != ref.mesh->num_triangles())
  {
    if (a.mesh->num_triangles() < ref.mesh->num_triangles())
    {
      ta = transfer_matrix(*a.mesh, *ref.mesh);
      move_a = true;
      fine = ref.mesh.get();
    }
    else
    {
      tr = transfer_matrix(*ref.mesh, *a.mesh);
      move_ref = true;
    }
  }
  else if (a.mesh->num_edges() != ref.mesh->num_edges())
  {
    throw ContractError("records live on incompatible meshes");
  }

  const double tau = std::max(a.tau, ref.tau);
  const double ra = tau / a.tau, rr = tau / ref.tau;
  const long sa = std::lround(ra), sr = std::lround(rr);
  if (std::abs(ra - sa) > 1e-9 * ra || std::abs(rr - sr) > 1e-9 * rr)
  {
    throw ContractError("time grids are not nested");
  }
  const long na = static_cast<long>(a.trajectory.size() - 1) / sa;
  const long nr = static_cast<long>(ref.trajectory.size() - 1) / sr;
  if (std::abs(na - nr) > 1)
  {
    throw ContractError("records cover different time intervals");
  }

  ErrorAccumulator acc(*fine);
  for (long n = 0; n <= std::min(na, nr); n++)
  {
    const auto &va = a.trajectory[n * sa];
    const auto &vr = ref.trajectory[n * sr];
    acc.sample(move_a ? ta * va : va, move_ref ? tr * vr : vr, tau);
  }
  return acc.value();
}

}  // namespace yeefem
