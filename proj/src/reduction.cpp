// SPDX-License-Identifier: Apache-2.0

#include "yeefem/reduction.hpp"

#include "yeefem/errors.hpp"

namespace yeefem
{

ReductionOperators build_projection_matrices(const DofMap &d)
{
  const int nf = d.n_full(), nr = d.n_reduced();
  std::vector<Triplet> p;
  p.reserve(nf);
  for (int e = 0; e < d.num_edges(); e++)
  {
    const int r = d.reduced_offset(e);
    p.push_back({2 * e, r, 1.0});
    p.push_back({2 * e + 1, d.is_reduced(e) ? r : r + 1, 1.0});
  }
  ReductionOperators ops;
  ops.P = SparseMatrix::from_triplets(nf, nr, std::move(p));

  // P^T P is diagonal; its entries are the column counts of P.
  const SparseMatrix pt = ops.P.transpose();
  std::vector<Triplet> r;
  r.reserve(nf);
  for (int i = 0; i < nr; i++)
  {
    const int begin = pt.row_ptr()[i], end = pt.row_ptr()[i + 1];
    double ptp = 0.0;
    for (int k = begin; k < end; k++)
    {
      ptp += pt.values()[k] * pt.values()[k];
    }
    for (int k = begin; k < end; k++)
    {
      r.push_back({i, pt.col_idx()[k], pt.values()[k] / ptp});
    }
  }
  ops.R = SparseMatrix::from_triplets(nr, nf, std::move(r));
  ops.Q = multiply(ops.P, ops.R);
  ops.Q.set_symmetric(true);
  return ops;
}

ReducedSystem reduce_system(const BlockDiagMatrix &minv, const SparseMatrix &msigma,
                            const SparseMatrix &k, const ReductionOperators &ops)
{
  const int nf = ops.P.rows();
  if (minv.dim() != nf || msigma.rows() != nf || msigma.cols() != nf || k.rows() != nf ||
      k.cols() != nf)
  {
    throw ContractError("reduce_system: operator dimensions do not match the prolongation");
  }
  const SparseMatrix pt = ops.P.transpose();
  const SparseMatrix rt = ops.R.transpose();
  ReducedSystem sys;
  sys.Minv = multiply(multiply(ops.R, minv.to_sparse()), rt);
  sys.Msigma = multiply(multiply(pt, msigma), ops.P);
  sys.K = multiply(multiply(pt, k), ops.P);
  sys.Minv.set_symmetric(true);
  sys.Msigma.set_symmetric(true);
  sys.K.set_symmetric(true);
  return sys;
}

DofVector reduce_rhs_lifted(const DofVector &load, const BlockDiagMatrix &minv,
                            const ReductionOperators &ops)
{
  if (load.space != Space::Full || static_cast<int>(load.size()) != minv.dim())
  {
    throw ContractError("lifted right-hand side expects a full-space load");
  }
  const std::vector<double> tmp = minv * load.coeffs;
  return {Space::Reduced, ops.R * tmp};
}

DofVector restrict_load(const DofVector &load, const ReductionOperators &ops)
{
  if (load.space != Space::Full || static_cast<int>(load.size()) != ops.P.rows())
  {
    throw ContractError("restrict_load expects a full-space load");
  }
  std::vector<double> out(ops.P.cols(), 0.0);
  const auto &P = ops.P;
  for (int i = 0; i < P.rows(); i++)
  {
    for (int k = P.row_ptr()[i]; k < P.row_ptr()[i + 1]; k++)
    {
      out[P.col_idx()[k]] += P.values()[k] * load.coeffs[i];
    }
  }
  return {Space::Reduced, std::move(out)};
}

DofVector reduce_rhs_direct(const DofVector &load_reduced, const SparseMatrix &mtilde_inv)
{
  if (load_reduced.space != Space::Reduced ||
      static_cast<int>(load_reduced.size()) != mtilde_inv.cols())
  {
    throw ContractError("direct right-hand side expects a reduced-space load");
  }
  return {Space::Reduced, mtilde_inv * load_reduced.coeffs};
}

}  // namespace yeefem
