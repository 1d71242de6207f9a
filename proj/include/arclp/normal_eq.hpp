#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "arclp/model.hpp"
#include "arclp/sparse.hpp"
#include "arclp/vec.hpp"

namespace arclp {

// Symmetric positive (semi)definite matrix; only the lower triangle
// (including the diagonal) is stored.
struct SymSparseMatrix {
  int n = 0;
  SparseMatrix lower;

  Vec multiply(const Vec& x) const;
};

// A D^2 A' with D^2 = diag(x/s). Throws std::domain_error unless x, s > 0.
SymSparseMatrix assemble_normal(const SparseMatrix& A, const Vec& x, const Vec& s);

enum class FactorizeMode { automatic, dense, sparse };

// Fill-reducing ordering, elimination tree and column counts for the sparse
// path. The pattern of A D^2 A' does not change between iterations, so this
// is computed once per problem and reused.
struct CholeskySymbolic {
  int n = 0;
  std::vector<int> perm;     // elimination order: perm[step] = original index
  std::vector<int> pinv;     // inverse permutation
  std::vector<int> parent;   // elimination tree on the permuted pattern
  std::vector<int> col_ptr;  // column pointers of L (permuted)
  std::vector<std::vector<int>> upper;  // strict upper pattern per permuted column
};

CholeskySymbolic analyze(const SymSparseMatrix& M);

// P M P' = L L'. Pivots at or below 1e-12 times the largest initial diagonal
// are reported as failing rather than perturbed; a factor with failures
// refuses to solve.
class CholeskyFactor {
 public:
  bool positive_definite() const { return failing_.empty(); }
  const std::vector<int>& failing_pivots() const { return failing_; }  // original row ids
  int order() const { return n_; }
  bool dense() const { return is_dense_; }

  // Solves M u = rhs with one step of iterative refinement.
  Vec solve(const Vec& rhs) const;

  // Row-major dense copy of L and the ordering it was computed under
  // (identity for the dense path); mainly for verification.
  std::vector<double> dense_lower() const;
  std::vector<int> permutation() const;

 private:
  friend CholeskyFactor factorize(const SymSparseMatrix&, FactorizeMode, const CholeskySymbolic*);

  Vec solve_once(const Vec& rhs) const;

  int n_ = 0;
  bool is_dense_ = true;
  std::vector<int> failing_;
  SymSparseMatrix matrix_;  // kept for the refinement residual

  // dense path
  std::vector<double> dense_l_;  // row-major lower triangle, full n x n

  // sparse path
  std::shared_ptr<const CholeskySymbolic> symbolic_;
  std::vector<int> l_row_;
  std::vector<double> l_val_;
};

CholeskyFactor factorize(const SymSparseMatrix& M, FactorizeMode mode = FactorizeMode::automatic,
                         const CholeskySymbolic* symbolic = nullptr);

class inconsistent_rows : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RowReduction {
  SparseMatrix A;
  Vec b;
  std::vector<int> removed;  // row ids of the input matrix, ascending
};

// Deletes rows that are linear combinations of others. Rows holding a column
// singleton are peeled off first (they cannot be dependent); Gaussian
// elimination with Markowitz pivoting and threshold 0.1 sorts out the rest.
// Throws inconsistent_rows when a dependent row contradicts its generators.
RowReduction remove_dependent_rows(const SparseMatrix& A, const Vec& b);

class all_columns_dropped : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ColumnDrop {
  StandardFormLP lp;
  Iterate it;
  std::vector<int> dropped_cols;  // column ids of the input LP
  std::vector<int> removed_rows;  // row ids of the input LP, if rank repair ran
};

// Removes every column with x_i <= eps_x from A, x, s, c, then restores full
// row rank if the normal matrix lost it.
ColumnDrop drop_small_columns(const StandardFormLP& lp, const Iterate& it, double eps_x);

}  // namespace arclp
