// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_SPARSE_HPP
#define YEEFEM_SPARSE_HPP

#include <iosfwd>
#include <span>
#include <vector>

namespace yeefem
{

struct Triplet
{
  int row;
  int col;
  double value;
};

//
// Compressed row storage with sorted, unique column ids per row.
//
class SparseMatrix
{
public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

  // Duplicate entries are summed in the order they appear, so the result is
  // bit-identical for identical input sequences.
  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets,
                                    bool symmetric = false);
  static SparseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }
  bool symmetric() const { return symmetric_; }
  void set_symmetric(bool s) { symmetric_ = s; }

  const std::vector<int> &row_ptr() const { return row_ptr_; }
  const std::vector<int> &col_idx() const { return col_idx_; }
  const std::vector<double> &values() const { return values_; }

  // y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  // y += alpha A x
  void multiply_add(double alpha, std::span<const double> x, std::span<double> y) const;
  std::vector<double> operator*(std::span<const double> x) const;
  double quadratic_form(std::span<const double> x) const;

  double entry(int i, int j) const;
  SparseMatrix transpose() const;
  SparseMatrix scaled(double s) const;

  // Largest |A_ij - A_ji| relative to the largest |A_ij|.
  double symmetry_defect() const;

  // One "row col value" line per stored entry, 1-based indices.
  void write_triplets(std::ostream &os) const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
  bool symmetric_ = false;
};

SparseMatrix multiply(const SparseMatrix &a, const SparseMatrix &b);
// a + s b
SparseMatrix add(const SparseMatrix &a, const SparseMatrix &b, double s = 1.0);
// a^T b c
SparseMatrix triple_product(const SparseMatrix &at, const SparseMatrix &b,
                            const SparseMatrix &c);

}  // namespace yeefem

#endif  // YEEFEM_SPARSE_HPP
