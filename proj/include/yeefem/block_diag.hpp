// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_BLOCK_DIAG_HPP
#define YEEFEM_BLOCK_DIAG_HPP

#include <span>
#include <vector>

#include "yeefem/sparse.hpp"

namespace yeefem
{

//
// Block-diagonal matrix with one dense symmetric block per mesh vertex. The
// block of vertex v couples the dofs attached to v, i.e. those whose basis
// function does not vanish at v. Every dof lives in exactly one block.
//
class BlockDiagMatrix
{
public:
  BlockDiagMatrix() = default;

  // `block_dofs[v]` lists the global dofs of vertex v in ascending order.
  BlockDiagMatrix(int dim, std::vector<std::vector<int>> block_dofs);

  int dim() const { return dim_; }
  int num_blocks() const { return static_cast<int>(dofs_.size()); }
  const std::vector<int> &block_dofs(int v) const { return dofs_[v]; }
  int block_size(int v) const { return static_cast<int>(dofs_[v].size()); }

  // Row-major block entries.
  std::span<double> block(int v);
  std::span<const double> block(int v) const;

  void multiply(std::span<const double> x, std::span<double> y) const;
  void multiply_add(double alpha, std::span<const double> x, std::span<double> y) const;
  std::vector<double> operator*(std::span<const double> x) const;
  double quadratic_form(std::span<const double> x) const;

  SparseMatrix to_sparse() const;

private:
  int dim_ = 0;
  std::vector<std::vector<int>> dofs_;
  std::vector<std::size_t> offsets_;
  std::vector<double> values_;
};

// Blockwise inverse via Cholesky. Throws SingularBlockError naming the first
// block that is not positive definite.
BlockDiagMatrix invert_block_mass(const BlockDiagMatrix &m);

}  // namespace yeefem

#endif  // YEEFEM_BLOCK_DIAG_HPP
