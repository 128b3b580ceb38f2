// SPDX-License-Identifier: Apache-2.0

#include "yeefem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "yeefem/errors.hpp"

namespace yeefem
{

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets,
                                         bool symmetric)
{
  SparseMatrix a(rows, cols);
  for (const auto &t : triplets)
  {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
    {
      throw ContractError("triplet index out of range");
    }
  }
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet &x, const Triplet &y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  a.col_idx_.reserve(triplets.size());
  a.values_.reserve(triplets.size());
  std::size_t k = 0;
  for (int i = 0; i < rows; i++)
  {
    while (k < triplets.size() && triplets[k].row == i)
    {
      const int j = triplets[k].col;
      double v = 0.0;
      while (k < triplets.size() && triplets[k].row == i && triplets[k].col == j)
      {
        v += triplets[k].value;
        k++;
      }
      a.col_idx_.push_back(j);
      a.values_.push_back(v);
    }
    a.row_ptr_[i + 1] = static_cast<int>(a.col_idx_.size());
  }
  a.symmetric_ = symmetric;
  return a;
}

SparseMatrix SparseMatrix::identity(int n)
{
  SparseMatrix a(n, n);
  a.col_idx_.resize(n);
  a.values_.assign(n, 1.0);
  for (int i = 0; i < n; i++)
  {
    a.col_idx_[i] = i;
    a.row_ptr_[i + 1] = i + 1;
  }
  a.symmetric_ = true;
  return a;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const
{
  for (int i = 0; i < rows_; i++)
  {
    double s = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; k++)
    {
      s += values_[k] * x[col_idx_[k]];
    }
    y[i] = s;
  }
}

void SparseMatrix::multiply_add(double alpha, std::span<const double> x,
                                std::span<double> y) const
{
  for (int i = 0; i < rows_; i++)
  {
    double s = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; k++)
    {
      s += values_[k] * x[col_idx_[k]];
    }
    y[i] += alpha * s;
  }
}

std::vector<double> SparseMatrix::operator*(std::span<const double> x) const
{
  if (static_cast<int>(x.size()) != cols_)
  {
    throw ContractError("matrix-vector dimension mismatch");
  }
  std::vector<double> y(rows_);
  multiply(x, y);
  return y;
}

double SparseMatrix::quadratic_form(std::span<const double> x) const
{
  double q = 0.0;
  for (int i = 0; i < rows_; i++)
  {
    double s = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; k++)
    {
      s += values_[k] * x[col_idx_[k]];
    }
    q += x[i] * s;
  }
  return q;
}

double SparseMatrix::entry(int i, int j) const
{
  const auto begin = col_idx_.begin() + row_ptr_[i], end = col_idx_.begin() + row_ptr_[i + 1];
  auto it = std::lower_bound(begin, end, j);
  if (it != end && *it == j)
  {
    return values_[it - col_idx_.begin()];
  }
  return 0.0;
}

SparseMatrix SparseMatrix::transpose() const
{
  SparseMatrix t(cols_, rows_);
  std::vector<int> count(cols_ + 1, 0);
  for (int j : col_idx_)
  {
    count[j + 1]++;
  }
  for (int j = 0; j < cols_; j++)
  {
    count[j + 1] += count[j];
  }
  t.row_ptr_ = count;
  t.col_idx_.resize(nnz());
  t.values_.resize(nnz());
  for (int i = 0; i < rows_; i++)
  {
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; k++)
    {
      const int pos = count[col_idx_[k]]++;
      t.col_idx_[pos] = i;
      t.values_[pos] = values_[k];
    }
  }
  t.symmetric_ = symmetric_;
  return t;
}

SparseMatrix SparseMatrix::scaled(double s) const
{
  SparseMatrix a = *this;
  for (double &v : a.values_)
  {
    v *= s;
  }
  return a;
}

double SparseMatrix::symmetry_defect() const
{
  if (rows_ != cols_)
  {
    return INFINITY;
  }
  double max_entry = 0.0, max_diff = 0.0;
  for (int i = 0; i < rows_; i++)
  {
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; k++)
    {
      max_entry = std::max(max_entry, std::abs(values_[k]));
      max_diff = std::max(max_diff, std::abs(values_[k] - entry(col_idx_[k], i)));
    }
  }
  return max_entry > 0.0 ? max_diff / max_entry : 0.0;
}

void SparseMatrix::write_triplets(std::ostream &os) const
{
  const auto old = os.precision(17);
  for (int i = 0; i < rows_; i++)
  {
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; k++)
    {
      os << i + 1 << ' ' << col_idx_[k] + 1 << ' ' << values_[k] << '\n';
    }
  }
  os.precision(old);
}

SparseMatrix multiply(const SparseMatrix &a, const SparseMatrix &b)
{
  if (a.cols() != b.rows())
  {
    throw ContractError("matrix product dimension mismatch");
  }
  std::vector<Triplet> trip;
  std::vector<double> acc(b.cols(), 0.0);
  std::vector<int> marker(b.cols(), -1);
  std::vector<int> cols;
  const auto &arp = a.row_ptr(), &aci = a.col_idx();
  const auto &av = a.values();
  const auto &brp = b.row_ptr(), &bci = b.col_idx();
  const auto &bv = b.values();
  for (int i = 0; i < a.rows(); i++)
  {
    cols.clear();
    for (int ka = arp[i]; ka < arp[i + 1]; ka++)
    {
      const int k = aci[ka];
      for (int kb = brp[k]; kb < brp[k + 1]; kb++)
      {
        const int j = bci[kb];
        if (marker[j] != i)
        {
          marker[j] = i;
          acc[j] = 0.0;
          cols.push_back(j);
        }
        acc[j] += av[ka] * bv[kb];
      }
    }
    std::sort(cols.begin(), cols.end());
    for (int j : cols)
    {
      trip.push_back({i, j, acc[j]});
    }
  }
  return SparseMatrix::from_triplets(a.rows(), b.cols(), std::move(trip));
}

SparseMatrix add(const SparseMatrix &a, const SparseMatrix &b, double s)
{
  if (a.rows() != b.rows() || a.cols() != b.cols())
  {
    throw ContractError("matrix sum dimension mismatch");
  }
  std::vector<Triplet> trip;
  trip.reserve(a.nnz() + b.nnz());
  for (int i = 0; i < a.rows(); i++)
  {
    for (int k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; k++)
    {
      trip.push_back({i, a.col_idx()[k], a.values()[k]});
    }
    for (int k = b.row_ptr()[i]; k < b.row_ptr()[i + 1]; k++)
    {
      trip.push_back({i, b.col_idx()[k], s * b.values()[k]});
    }
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(trip),
                                     a.symmetric() && b.symmetric());
}

SparseMatrix triple_product(const SparseMatrix &at, const SparseMatrix &b,
                            const SparseMatrix &c)
{
  return multiply(multiply(at.transpose(), b), c);
}

}  // namespace yeefem
