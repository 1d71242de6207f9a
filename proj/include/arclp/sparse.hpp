#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "arclp/vec.hpp"

namespace arclp {

struct Triplet {
  int row;
  int col;
  double value;
};

// Compressed-sparse-column matrix. Row indices within a column are sorted,
// duplicates summed at construction, explicit zeros dropped.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), col_ptr_(cols + 1, 0) {}

  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> entries);
  static SparseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nnz() const { return static_cast<int>(values_.size()); }

  std::span<const int> col_rows(int j) const {
    return {row_idx_.data() + col_ptr_[j], static_cast<std::size_t>(col_ptr_[j + 1] - col_ptr_[j])};
  }
  std::span<const double> col_values(int j) const {
    return {values_.data() + col_ptr_[j], static_cast<std::size_t>(col_ptr_[j + 1] - col_ptr_[j])};
  }
  const std::vector<int>& col_ptr() const { return col_ptr_; }
  const std::vector<int>& row_idx() const { return row_idx_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  Vec multiply(const Vec& x) const;            // A x
  Vec multiply_transpose(const Vec& y) const;  // A^T y
  SparseMatrix transpose() const;

  // Submatrix of the rows/columns listed (in the given order).
  SparseMatrix select(const std::vector<int>& keep_rows, const std::vector<int>& keep_cols) const;
  SparseMatrix select_cols(const std::vector<int>& keep_cols) const;

  // Dense row-major copy, for tests and small dense kernels.
  std::vector<double> to_dense() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> col_ptr_{0};
  std::vector<int> row_idx_;
  std::vector<double> values_;
};

}  // namespace arclp
