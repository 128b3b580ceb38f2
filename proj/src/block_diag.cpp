// SPDX-License-Identifier: Apache-2.0

#include "yeefem/block_diag.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "yeefem/errors.hpp"

namespace yeefem
{

BlockDiagMatrix::BlockDiagMatrix(int dim, std::vector<std::vector<int>> block_dofs)
  : dim_(dim), dofs_(std::move(block_dofs))
{
  offsets_.resize(dofs_.size() + 1, 0);
  std::vector<char> seen(dim, 0);
  for (std::size_t v = 0; v < dofs_.size(); v++)
  {
    for (int d : dofs_[v])
    {
      if (d < 0 || d >= dim || seen[d])
      {
        throw ContractError("block dof lists must partition the dofs");
      }
      seen[d] = 1;
    }
    offsets_[v + 1] = offsets_[v] + dofs_[v].size() * dofs_[v].size();
  }
  values_.assign(offsets_.back(), 0.0);
}

std::span<double> BlockDiagMatrix::block(int v)
{
  return {values_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::span<const double> BlockDiagMatrix::block(int v) const
{
  return {values_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

void BlockDiagMatrix::multiply(std::span<const double> x, std::span<double> y) const
{
  for (int v = 0; v < num_blocks(); v++)
  {
    const auto &dofs = dofs_[v];
    const std::size_t n = dofs.size();
    const double *b = values_.data() + offsets_[v];
    for (std::size_t i = 0; i < n; i++)
    {
      double s = 0.0;
      for (std::size_t j = 0; j < n; j++)
      {
        s += b[i * n + j] * x[dofs[j]];
      }
      y[dofs[i]] = s;
    }
  }
}

void BlockDiagMatrix::multiply_add(double alpha, std::span<const double> x,
                                   std::span<double> y) const
{
  for (int v = 0; v < num_blocks(); v++)
  {
    const auto &dofs = dofs_[v];
    const std::size_t n = dofs.size();
    const double *b = values_.data() + offsets_[v];
    for (std::size_t i = 0; i < n; i++)
    {
      double s = 0.0;
      for (std::size_t j = 0; j < n; j++)
      {
        s += b[i * n + j] * x[dofs[j]];
      }
      y[dofs[i]] += alpha * s;
    }
  }
}

std::vector<double> BlockDiagMatrix::operator*(std::span<const double> x) const
{
  if (static_cast<int>(x.size()) != dim_)
  {
    throw ContractError("block matrix-vector dimension mismatch");
  }
  std::vector<double> y(dim_, 0.0);
  multiply(x, y);
  return y;
}

double BlockDiagMatrix::quadratic_form(std::span<const double> x) const
{
  double q = 0.0;
  for (int v = 0; v < num_blocks(); v++)
  {
    const auto &dofs = dofs_[v];
    const std::size_t n = dofs.size();
    const double *b = values_.data() + offsets_[v];
    for (std::size_t i = 0; i < n; i++)
    {
      double s = 0.0;
      for (std::size_t j = 0; j < n; j++)
      {
        s += b[i * n + j] * x[dofs[j]];
      }
      q += x[dofs[i]] * s;
    }
  }
  return q;
}

SparseMatrix BlockDiagMatrix::to_sparse() const
{
  std::vector<Triplet> trip;
  trip.reserve(values_.size());
  for (int v = 0; v < num_blocks(); v++)
  {
    const auto &dofs = dofs_[v];
    const std::size_t n = dofs.size();
    const double *b = values_.data() + offsets_[v];
    for (std::size_t i = 0; i < n; i++)
    {
      for (std::size_t j = 0; j < n; j++)
      {
        trip.push_back({dofs[i], dofs[j], b[i * n + j]});
      }
    }
  }
  return SparseMatrix::from_triplets(dim_, dim_, std::move(trip), true);
}

BlockDiagMatrix invert_block_mass(const BlockDiagMatrix &m)
{
  BlockDiagMatrix inv = m;
  for (int v = 0; v < m.num_blocks(); v++)
  {
    const int n = m.block_size(v);
    if (n == 0)
    {
      continue;
    }
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMajor> a(m.block(v).data(), n, n);
    Eigen::LLT<RowMajor> llt(a);
    if (llt.info() != Eigen::Success)
    {
      Eigen::SelfAdjointEigenSolver<RowMajor> eig(a, Eigen::EigenvaluesOnly);
      throw SingularBlockError(v, eig.eigenvalues()(0));
    }
    Eigen::Map<RowMajor> out(inv.block(v).data(), n, n);
    out = llt.solve(RowMajor::Identity(n, n));
    // Symmetrize away the round-off of the triangular solves.
    out = (0.5 * (out + out.transpose())).eval();
  }
  return inv;
}

}  // namespace yeefem
