// SPDX-License-Identifier: Apache-2.0

#include "yeefem/energy.hpp"

#include <ostream>

#include "yeefem/errors.hpp"
#include "yeefem/format.hpp"

namespace yeefem
{

EnergyEvaluator::EnergyEvaluator(const BlockDiagMatrix &meps, const SparseMatrix &msigma,
                                 const SparseMatrix &k, const SparseMatrix *q)
  : meps_(&meps), msigma_(&msigma), k_(&k), q_(q)
{
  const int n = meps.dim();
  if (msigma.rows() != n || k.rows() != n || (q && q->rows() != n))
  {
    throw ContractError("energy forms differ in dimension");
  }
}

EnergyTerms EnergyEvaluator::operator()(std::span<const double> un,
                                        std::span<const double> unp1, double tau) const
{
  const std::size_t n = meps_->dim();
  if (un.size() != n || unp1.size() != n)
  {
    throw ContractError("energy arguments must be full-space vectors");
  }
  du_.resize(n);
  avg_.resize(n);
  for (std::size_t i = 0; i < n; i++)
  {
    du_[i] = (unp1[i] - un[i]) / tau;
    avg_[i] = 0.5 * (un[i] + unp1[i]);
  }
  EnergyTerms e;
  e.kinetic = meps_->quadratic_form(du_);
  e.curl = k_->quadratic_form(avg_);
  e.corr1 = -0.25 * tau * tau * k_->quadratic_form(du_);
  if (q_)
  {
    qdu_.resize(n);
    q_->multiply(du_, qdu_);
    e.corr2 = -0.5 * tau * (msigma_->quadratic_form(qdu_) - msigma_->quadratic_form(du_));
  }
  e.total = e.kinetic + e.curl + e.corr1 + e.corr2;
  return e;
}

EnergyTerms discrete_energy(std::span<const double> un, std::span<const double> unp1, double tau,
                            const BlockDiagMatrix &meps, const SparseMatrix &msigma,
                            const SparseMatrix &k, const SparseMatrix *q)
{
  return EnergyEvaluator(meps, msigma, k, q)(un, unp1, tau);
}

void write_energy_csv(std::ostream &os, const std::vector<EnergyRow> &rows)
{
  os << "step,t,kinetic,curl,corr1,corr2,total\n";
  for (const auto &r : rows)
  {
    os << r.step << ',' << format_double(r.t) << ',' << format_double(r.terms.kinetic) << ','
       << format_double(r.terms.curl) << ',' << format_double(r.terms.corr1) << ','
       << format_double(r.terms.corr2) << ',' << format_double(r.terms.total) << '\n';
  }
}

}  // namespace yeefem
