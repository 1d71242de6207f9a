#include "arclp/normal_eq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace arclp {

namespace {
constexpr int kDenseLimit = 200;
constexpr double kPivotRelTol = 1e-12;
constexpr double kPivotFloor = 1e-128;
}  // namespace

Vec SymSparseMatrix::multiply(const Vec& x) const {
  Vec y(n, 0.0);
  for (int j = 0; j < n; ++j) {
    auto rows = lower.col_rows(j);
    auto vals = lower.col_values(j);
    for (std::size_t p = 0; p < rows.size(); ++p) {
      int i = rows[p];
      y[i] += vals[p] * x[j];
      if (i != j) y[j] += vals[p] * x[i];
    }
  }
  return y;
}

SymSparseMatrix assemble_normal(const SparseMatrix& A, const Vec& x, const Vec& s) {
  const int m = A.rows();
  const int n = A.cols();
  if (static_cast<int>(x.size()) != n || static_cast<int>(s.size()) != n)
    throw std::invalid_argument("assemble_normal: dimension mismatch");
  for (int j = 0; j < n; ++j)
    if (x[j] <= 0.0 || s[j] <= 0.0)
      throw std::domain_error("assemble_normal: x and s must be strictly positive");

  SparseMatrix AT = A.transpose();
  std::vector<Triplet> ts;
  Vec work(m, 0.0);
  std::vector<int> touched;
  for (int k = 0; k < m; ++k) {  // column k of M, lower part only
    touched.clear();
    auto cols = AT.col_rows(k);
    auto cvals = AT.col_values(k);
    for (std::size_t p = 0; p < cols.size(); ++p) {
      int j = cols[p];
      double scaled = cvals[p] * (x[j] / s[j]);
      auto rows = A.col_rows(j);
      auto vals = A.col_values(j);
      for (std::size_t q = 0; q < rows.size(); ++q) {
        int i = rows[q];
        if (i < k) continue;
        if (work[i] == 0.0) touched.push_back(i);
        work[i] += vals[q] * scaled;
      }
    }
    for (int i : touched) {
      if (work[i] != 0.0) ts.push_back({i, k, work[i]});
      work[i] = 0.0;
    }
  }
  SymSparseMatrix M;
  M.n = m;
  M.lower = SparseMatrix::from_triplets(m, m, std::move(ts));
  return M;
}

namespace {

// Greedy minimum-degree ordering on the full symmetric pattern. The graphs
// here are small enough that the plain elimination-graph update is fine.
std::vector<int> min_degree_order(const SymSparseMatrix& M) {
  const int n = M.n;
  std::vector<std::set<int>> adj(n);
  for (int j = 0; j < n; ++j) {
    auto rows = M.lower.col_rows(j);
    for (int i : rows) {
      if (i == j) continue;
      adj[i].insert(j);
      adj[j].insert(i);
    }
  }
  std::vector<bool> eliminated(n, false);
  std::vector<int> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    std::size_t best_deg = std::numeric_limits<std::size_t>::max();
    for (int v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      if (adj[v].size() < best_deg) {
        best_deg = adj[v].size();
        best = v;
      }
    }
    order.push_back(best);
    eliminated[best] = true;
    std::vector<int> nbrs(adj[best].begin(), adj[best].end());
    for (int u : nbrs) adj[u].erase(best);
    for (std::size_t a = 0; a < nbrs.size(); ++a)
      for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
        adj[nbrs[a]].insert(nbrs[b]);
        adj[nbrs[b]].insert(nbrs[a]);
      }
    adj[best].clear();
  }
  return order;
}

// Pattern of row k of L in topological order; returns the start index into s.
int ereach(const CholeskySymbolic& sym, int k, std::vector<int>& w, std::vector<int>& s,
           std::vector<int>& stk) {
  int top = sym.n;
  w[k] = k;
  for (int i : sym.upper[k]) {
    int len = 0;
    while (i != -1 && i < k && w[i] != k) {
      stk[len++] = i;
      w[i] = k;
      i = sym.parent[i];
    }
    while (len > 0) s[--top] = stk[--len];
  }
  return top;
}

}  // namespace

CholeskySymbolic analyze(const SymSparseMatrix& M) {
  CholeskySymbolic sym;
  const int n = M.n;
  sym.n = n;
  sym.perm = min_degree_order(M);
  sym.pinv.assign(n, 0);
  for (int k = 0; k < n; ++k) sym.pinv[sym.perm[k]] = k;

  sym.upper.assign(n, {});
  for (int j = 0; j < n; ++j) {
    auto rows = M.lower.col_rows(j);
    for (int i : rows) {
      if (i == j) continue;
      int a = sym.pinv[i], b = sym.pinv[j];
      sym.upper[std::max(a, b)].push_back(std::min(a, b));
    }
  }
  for (auto& col : sym.upper) std::sort(col.begin(), col.end());

  // elimination tree (Liu's algorithm with path compression)
  sym.parent.assign(n, -1);
  std::vector<int> ancestor(n, -1);
  for (int k = 0; k < n; ++k) {
    for (int i : sym.upper[k]) {
      int r = i;
      while (ancestor[r] != -1 && ancestor[r] != k) {
        int next = ancestor[r];
        ancestor[r] = k;
        r = next;
      }
      if (ancestor[r] == -1) {
        ancestor[r] = k;
        sym.parent[r] = k;
      }
    }
  }

  // column counts of L via a symbolic pass
  std::vector<int> count(n, 1);  // diagonal
  std::vector<int> w(n, -1), s(n), stk(n);
  for (int k = 0; k < n; ++k) {
    int top = ereach(sym, k, w, s, stk);
    for (int t = top; t < n; ++t) ++count[s[t]];
  }
  sym.col_ptr.assign(n + 1, 0);
  for (int k = 0; k < n; ++k) sym.col_ptr[k + 1] = sym.col_ptr[k] + count[k];
  return sym;
}

CholeskyFactor factorize(const SymSparseMatrix& M, FactorizeMode mode,
                         const CholeskySymbolic* symbolic) {
  CholeskyFactor f;
  const int n = M.n;
  f.n_ = n;
  f.matrix_ = M;

  bool dense = mode == FactorizeMode::dense || (mode == FactorizeMode::automatic && n <= kDenseLimit);
  f.is_dense_ = dense;

  double max_diag = 0.0;
  for (int j = 0; j < n; ++j) {
    auto rows = M.lower.col_rows(j);
    auto vals = M.lower.col_values(j);
    for (std::size_t p = 0; p < rows.size(); ++p)
      if (rows[p] == j) max_diag = std::max(max_diag, vals[p]);
  }
  const double pivot_tol = kPivotRelTol * max_diag;

  if (dense) {
    std::vector<double>& L = f.dense_l_;
    L.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
      auto rows = M.lower.col_rows(j);
      auto vals = M.lower.col_values(j);
      for (std::size_t p = 0; p < rows.size(); ++p)
        L[static_cast<std::size_t>(rows[p]) * n + j] = vals[p];
    }
    for (int j = 0; j < n; ++j) {
      double d = L[static_cast<std::size_t>(j) * n + j];
      for (int k = 0; k < j; ++k) {
        double l = L[static_cast<std::size_t>(j) * n + k];
        d -= l * l;
      }
      if (d <= pivot_tol) f.failing_.push_back(j);
      double piv = std::sqrt(std::max({d, pivot_tol, kPivotFloor}));
      L[static_cast<std::size_t>(j) * n + j] = piv;
      for (int i = j + 1; i < n; ++i) {
        double sum = L[static_cast<std::size_t>(i) * n + j];
        for (int k = 0; k < j; ++k)
          sum -= L[static_cast<std::size_t>(i) * n + k] * L[static_cast<std::size_t>(j) * n + k];
        L[static_cast<std::size_t>(i) * n + j] = sum / piv;
      }
    }
    return f;
  }

  // sparse up-looking factorization
  std::shared_ptr<const CholeskySymbolic> sym;
  if (symbolic && symbolic->n == n) {
    sym = std::make_shared<CholeskySymbolic>(*symbolic);
  } else {
    sym = std::make_shared<CholeskySymbolic>(analyze(M));
  }

  // permuted numeric values: strict upper per column + diagonal.  A value
  // pattern narrower than the symbolic one (cancellation) reads as zero; a
  // wider one means the cached symbolic is stale and gets rebuilt.
  std::vector<std::vector<double>> upper_val(n);
  Vec diag(n, 0.0);
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<std::map<int, double>> tmp(n);
    std::size_t entries = 0;
    for (int j = 0; j < n; ++j) {
      auto rows = M.lower.col_rows(j);
      auto vals = M.lower.col_values(j);
      for (std::size_t p = 0; p < rows.size(); ++p) {
        int i = rows[p];
        if (i == j) {
          diag[sym->pinv[j]] = vals[p];
        } else {
          int a = sym->pinv[i], b = sym->pinv[j];
          tmp[std::max(a, b)][std::min(a, b)] = vals[p];
          ++entries;
        }
      }
    }
    std::size_t covered = 0;
    for (int k = 0; k < n; ++k) {
      upper_val[k].clear();
      upper_val[k].reserve(sym->upper[k].size());
      for (int i : sym->upper[k]) {
        auto itr = tmp[k].find(i);
        upper_val[k].push_back(itr == tmp[k].end() ? 0.0 : itr->second);
        if (itr != tmp[k].end()) ++covered;
      }
    }
    if (covered == entries) break;
    sym = std::make_shared<CholeskySymbolic>(analyze(M));
  }
  f.symbolic_ = sym;

  const auto& Lp = sym->col_ptr;
  f.l_row_.assign(Lp[n], 0);
  f.l_val_.assign(Lp[n], 0.0);
  std::vector<int> fill(Lp.begin(), Lp.end() - 1);  // next free slot per column
  std::vector<int> w(n, -1), s(n), stk(n);
  Vec x(n, 0.0);

  for (int k = 0; k < n; ++k) {
    int top = ereach(*sym, k, w, s, stk);
    double d = diag[k];
    for (std::size_t p = 0; p < sym->upper[k].size(); ++p) x[sym->upper[k][p]] = upper_val[k][p];
    for (int t = top; t < n; ++t) {
      int i = s[t];
      double lki = x[i] / f.l_val_[Lp[i]];  // diagonal is the first entry of column i
      x[i] = 0.0;
      for (int p = Lp[i] + 1; p < fill[i]; ++p) x[f.l_row_[p]] -= f.l_val_[p] * lki;
      d -= lki * lki;
      int q = fill[i]++;
      f.l_row_[q] = k;
      f.l_val_[q] = lki;
    }
    if (d <= pivot_tol) f.failing_.push_back(sym->perm[k]);
    int q = fill[k]++;
    f.l_row_[q] = k;
    f.l_val_[q] = std::sqrt(std::max({d, pivot_tol, kPivotFloor}));
  }
  return f;
}

Vec CholeskyFactor::solve_once(const Vec& rhs) const {
  const int n = n_;
  if (is_dense_) {
    Vec y(rhs);
    const auto& L = dense_l_;
    for (int i = 0; i < n; ++i) {
      double sum = y[i];
      for (int k = 0; k < i; ++k) sum -= L[static_cast<std::size_t>(i) * n + k] * y[k];
      y[i] = sum / L[static_cast<std::size_t>(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
      double sum = y[i];
      for (int k = i + 1; k < n; ++k) sum -= L[static_cast<std::size_t>(k) * n + i] * y[k];
      y[i] = sum / L[static_cast<std::size_t>(i) * n + i];
    }
    return y;
  }

  const auto& sym = *symbolic_;
  const auto& Lp = sym.col_ptr;
  Vec y(n);
  for (int k = 0; k < n; ++k) y[k] = rhs[sym.perm[k]];
  // L y' = y (columns hold the diagonal first)
  for (int j = 0; j < n; ++j) {
    y[j] /= l_val_[Lp[j]];
    for (int p = Lp[j] + 1; p < Lp[j + 1]; ++p) y[l_row_[p]] -= l_val_[p] * y[j];
  }
  // L' z = y'
  for (int j = n - 1; j >= 0; --j) {
    double sum = y[j];
    for (int p = Lp[j] + 1; p < Lp[j + 1]; ++p) sum -= l_val_[p] * y[l_row_[p]];
    y[j] = sum / l_val_[Lp[j]];
  }
  Vec u(n);
  for (int k = 0; k < n; ++k) u[sym.perm[k]] = y[k];
  return u;
}

std::vector<double> CholeskyFactor::dense_lower() const {
  if (is_dense_) return dense_l_;
  std::vector<double> L(static_cast<std::size_t>(n_) * n_, 0.0);
  const auto& Lp = symbolic_->col_ptr;
  for (int j = 0; j < n_; ++j)
    for (int p = Lp[j]; p < Lp[j + 1]; ++p)
      L[static_cast<std::size_t>(l_row_[p]) * n_ + j] = l_val_[p];
  return L;
}

std::vector<int> CholeskyFactor::permutation() const {
  if (is_dense_) {
    std::vector<int> p(n_);
    for (int i = 0; i < n_; ++i) p[i] = i;
    return p;
  }
  return symbolic_->perm;
}

Vec CholeskyFactor::solve(const Vec& rhs) const {
  if (!positive_definite())
    throw std::logic_error("CholeskyFactor::solve on a factorization that failed");
  if (static_cast<int>(rhs.size()) != n_)
    throw std::invalid_argument("CholeskyFactor::solve: rhs length mismatch");
  Vec u = solve_once(rhs);
  // one refinement step
  Vec r = matrix_.multiply(u);
  for (int i = 0; i < n_; ++i) r[i] = rhs[i] - r[i];
  Vec du = solve_once(r);
  for (int i = 0; i < n_; ++i) u[i] += du[i];
  return u;
}

RowReduction remove_dependent_rows(const SparseMatrix& A, const Vec& b) {
  const int m = A.rows();
  const int n = A.cols();
  if (static_cast<int>(b.size()) != m)
    throw std::invalid_argument("remove_dependent_rows: b length mismatch");

  SparseMatrix AT = A.transpose();
  std::vector<bool> remaining(m, true);
  std::vector<int> col_count(n, 0);
  for (int j = 0; j < n; ++j) col_count[j] = static_cast<int>(A.col_rows(j).size());

  // peel rows that own a column singleton; they cannot be dependent
  bool peeled = true;
  while (peeled) {
    peeled = false;
    for (int j = 0; j < n; ++j) {
      if (col_count[j] != 1) continue;
      int owner = -1;
      for (int i : A.col_rows(j))
        if (remaining[i]) owner = i;
      if (owner < 0) {
        col_count[j] = 0;
        continue;
      }
      remaining[owner] = false;
      for (int jj : AT.col_rows(owner)) --col_count[jj];
      peeled = true;
    }
  }

  std::vector<int> suspects;
  for (int i = 0; i < m; ++i)
    if (remaining[i]) suspects.push_back(i);

  std::vector<int> removed;
  if (!suspects.empty()) {
    // Gaussian elimination on the suspect rows, Markowitz pivoting with
    // threshold 0.1, ties broken by magnitude
    std::vector<std::map<int, double>> work(suspects.size());
    Vec bw(suspects.size());
    for (std::size_t r = 0; r < suspects.size(); ++r) {
      int i = suspects[r];
      for (int jj : AT.col_rows(i)) {
        auto rows = A.col_rows(jj);
        auto vals = A.col_values(jj);
        for (std::size_t p = 0; p < rows.size(); ++p)
          if (rows[p] == i) work[r][jj] = vals[p];
      }
      bw[r] = b[i];
    }
    double b_scale = 1.0 + norm_inf(b);
    std::vector<bool> active(suspects.size(), true);

    while (true) {
      std::map<int, double> col_max;
      std::map<int, int> col_nnz;
      for (std::size_t r = 0; r < suspects.size(); ++r) {
        if (!active[r]) continue;
        for (auto& [j, v] : work[r]) {
          col_max[j] = std::max(col_max[j], std::abs(v));
          ++col_nnz[j];
        }
      }
      if (col_max.empty()) break;

      std::size_t best_r = 0;
      int best_c = -1;
      long best_score = std::numeric_limits<long>::max();
      double best_mag = 0.0;
      for (std::size_t r = 0; r < suspects.size(); ++r) {
        if (!active[r]) continue;
        for (auto& [j, v] : work[r]) {
          if (std::abs(v) < 0.1 * col_max[j]) continue;  // threshold pivoting
          long score = static_cast<long>(work[r].size() - 1) * (col_nnz[j] - 1);
          double mag = std::abs(v);
          if (score < best_score || (score == best_score && mag > best_mag)) {
            best_score = score;
            best_mag = mag;
            best_r = r;
            best_c = j;
          }
        }
      }
      if (best_c < 0) break;

      double piv = work[best_r].at(best_c);
      for (std::size_t r = 0; r < suspects.size(); ++r) {
        if (!active[r] || r == best_r) continue;
        auto itr = work[r].find(best_c);
        if (itr == work[r].end()) continue;
        double factor = itr->second / piv;
        for (auto& [j, v] : work[best_r]) {
          double cur = 0.0;
          if (auto it2 = work[r].find(j); it2 != work[r].end()) cur = it2->second;
          double nv = cur - factor * v;
          if (std::abs(nv) <= 1e-13 * (std::abs(cur) + std::abs(factor * v) + 1.0))
            work[r].erase(j);
          else
            work[r][j] = nv;
        }
        bw[r] -= factor * bw[best_r];
      }
      active[best_r] = false;  // pivot row is independent
    }

    for (std::size_t r = 0; r < suspects.size(); ++r) {
      if (!active[r]) continue;  // used as a pivot
      if (work[r].empty()) {
        if (std::abs(bw[r]) > 1e-8 * b_scale)
          throw inconsistent_rows("dependent row with inconsistent right-hand side");
        removed.push_back(suspects[r]);
      }
    }
  }

  RowReduction out;
  std::sort(removed.begin(), removed.end());
  std::vector<bool> is_removed(m, false);
  for (int i : removed) is_removed[i] = true;
  std::vector<int> keep;
  for (int i = 0; i < m; ++i)
    if (!is_removed[i]) keep.push_back(i);
  std::vector<int> all_cols(n);
  for (int j = 0; j < n; ++j) all_cols[j] = j;
  out.A = A.select(keep, all_cols);
  out.b.reserve(keep.size());
  for (int i : keep) out.b.push_back(b[i]);
  out.removed = std::move(removed);
  return out;
}

ColumnDrop drop_small_columns(const StandardFormLP& lp, const Iterate& it, double eps_x) {
  const int n = lp.cols();
  std::vector<int> dropped, keep;
  for (int j = 0; j < n; ++j) {
    if (it.x[j] <= eps_x)
      dropped.push_back(j);
    else
      keep.push_back(j);
  }
  if (keep.empty()) throw all_columns_dropped("every column fell below eps_x");

  ColumnDrop out;
  out.dropped_cols = dropped;
  out.lp.A = lp.A.select_cols(keep);
  out.lp.b = lp.b;
  out.lp.f_obj = lp.f_obj;
  out.lp.row_names = lp.row_names;
  for (int j : keep) {
    out.lp.c.push_back(lp.c[j]);
    if (!lp.col_names.empty()) out.lp.col_names.push_back(lp.col_names[j]);
    out.it.x.push_back(it.x[j]);
    out.it.s.push_back(it.s[j]);
  }
  out.it.lambda = it.lambda;
  out.it.k = it.k;

  // the surviving block may have lost row rank
  Vec ones(keep.size(), 1.0);
  CholeskyFactor f = factorize(assemble_normal(out.lp.A, ones, ones));
  if (!f.positive_definite()) {
    RowReduction rr = remove_dependent_rows(out.lp.A, out.lp.b);
    out.removed_rows = rr.removed;
    out.lp.A = std::move(rr.A);
    out.lp.b = std::move(rr.b);
    std::vector<bool> gone(lp.rows(), false);
    for (int i : out.removed_rows) gone[i] = true;
    Vec lambda;
    std::vector<std::string> names;
    for (int i = 0; i < lp.rows(); ++i) {
      if (gone[i]) continue;
      lambda.push_back(it.lambda[i]);
      if (!lp.row_names.empty()) names.push_back(lp.row_names[i]);
    }
    out.it.lambda = std::move(lambda);
    out.lp.row_names = std::move(names);
  }
  return out;
}

}  // namespace arclp
