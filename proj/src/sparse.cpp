#include "arclp/sparse.hpp"

#include <algorithm>

namespace arclp {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> entries) {
  for (const Triplet& t : entries) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::invalid_argument("triplet index out of range");
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });

  SparseMatrix m(rows, cols);
  m.row_idx_.reserve(entries.size());
  m.values_.reserve(entries.size());
  std::size_t i = 0;
  for (int j = 0; j < cols; ++j) {
    while (i < entries.size() && entries[i].col == j) {
      int r = entries[i].row;
      double v = 0.0;
      while (i < entries.size() && entries[i].col == j && entries[i].row == r) {
        v += entries[i].value;
        ++i;
      }
      if (v != 0.0) {
        m.row_idx_.push_back(r);
        m.values_.push_back(v);
      }
    }
    m.col_ptr_[j + 1] = static_cast<int>(m.row_idx_.size());
  }
  return m;
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n, n);
  m.row_idx_.resize(n);
  m.values_.assign(n, 1.0);
  for (int j = 0; j < n; ++j) {
    m.row_idx_[j] = j;
    m.col_ptr_[j + 1] = j + 1;
  }
  return m;
}

Vec SparseMatrix::multiply(const Vec& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("multiply: size mismatch");
  Vec y(rows_, 0.0);
  for (int j = 0; j < cols_; ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    for (int p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) y[row_idx_[p]] += values_[p] * xj;
  }
  return y;
}

Vec SparseMatrix::multiply_transpose(const Vec& y) const {
  if (static_cast<int>(y.size()) != rows_) throw std::invalid_argument("multiply_transpose: size mismatch");
  Vec z(cols_, 0.0);
  for (int j = 0; j < cols_; ++j) {
    double sum = 0.0;
    for (int p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) sum += values_[p] * y[row_idx_[p]];
    z[j] = sum;
  }
  return z;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  t.row_idx_.resize(values_.size());
  t.values_.resize(values_.size());
  std::vector<int> count(rows_, 0);
  for (int r : row_idx_) ++count[r];
  for (int i = 0; i < rows_; ++i) t.col_ptr_[i + 1] = t.col_ptr_[i] + count[i];
  std::vector<int> next(t.col_ptr_.begin(), t.col_ptr_.end() - 1);
  for (int j = 0; j < cols_; ++j) {
    for (int p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) {
      int q = next[row_idx_[p]]++;
      t.row_idx_[q] = j;
      t.values_[q] = values_[p];
    }
  }
  return t;
}

SparseMatrix SparseMatrix::select(const std::vector<int>& keep_rows,
                                  const std::vector<int>& keep_cols) const {
  std::vector<int> row_map(rows_, -1);
  for (std::size_t i = 0; i < keep_rows.size(); ++i) row_map[keep_rows[i]] = static_cast<int>(i);

  std::vector<Triplet> ts;
  for (std::size_t jj = 0; jj < keep_cols.size(); ++jj) {
    int j = keep_cols[jj];
    for (int p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) {
      int r = row_map[row_idx_[p]];
      if (r >= 0) ts.push_back({r, static_cast<int>(jj), values_[p]});
    }
  }
  return from_triplets(static_cast<int>(keep_rows.size()), static_cast<int>(keep_cols.size()),
                       std::move(ts));
}

SparseMatrix SparseMatrix::select_cols(const std::vector<int>& keep_cols) const {
  std::vector<int> all_rows(rows_);
  for (int i = 0; i < rows_; ++i) all_rows[i] = i;
  return select(all_rows, keep_cols);
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> d(static_cast<std::size_t>(rows_) * cols_, 0.0);
  for (int j = 0; j < cols_; ++j)
    for (int p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p)
      d[static_cast<std::size_t>(row_idx_[p]) * cols_ + j] = values_[p];
  return d;
}

}  // namespace arclp
