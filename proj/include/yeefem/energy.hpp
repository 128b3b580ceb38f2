// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_ENERGY_HPP
#define YEEFEM_ENERGY_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include "yeefem/block_diag.hpp"
#include "yeefem/sparse.hpp"

namespace yeefem
{

// Terms of the discrete energy of a pair (u^n, u^{n+1}):
//   kinetic = |d u|^2_eps,  curl = |curl u_avg|^2_nu,
//   corr1 = -tau^2/4 |curl d u|^2_nu,
//   corr2 = -tau/2 (|Q d u|^2_sigma - |d u|^2_sigma),
// where d u = (u^{n+1} - u^n) / tau and u_avg = (u^n + u^{n+1}) / 2.
struct EnergyTerms
{
  double kinetic = 0.0;
  double curl = 0.0;
  double corr1 = 0.0;
  double corr2 = 0.0;
  double total = 0.0;
};

struct EnergyRow
{
  long step = 0;
  double t = 0.0;
  EnergyTerms terms;
};

// Full-space quadratic forms of the energy. `q` may be null when no edge is
// reduced; the second correction then vanishes.
class EnergyEvaluator
{
public:
  EnergyEvaluator(const BlockDiagMatrix &meps, const SparseMatrix &msigma, const SparseMatrix &k,
                  const SparseMatrix *q);

  EnergyTerms operator()(std::span<const double> un, std::span<const double> unp1,
                         double tau) const;

private:
  const BlockDiagMatrix *meps_;
  const SparseMatrix *msigma_;
  const SparseMatrix *k_;
  const SparseMatrix *q_;
  mutable std::vector<double> du_, avg_, qdu_;
};

EnergyTerms discrete_energy(std::span<const double> un, std::span<const double> unp1, double tau,
                            const BlockDiagMatrix &meps, const SparseMatrix &msigma,
                            const SparseMatrix &k, const SparseMatrix *q);

// Header `step,t,kinetic,curl,corr1,corr2,total`.
void write_energy_csv(std::ostream &os, const std::vector<EnergyRow> &rows);

}  // namespace yeefem

#endif  // YEEFEM_ENERGY_HPP
