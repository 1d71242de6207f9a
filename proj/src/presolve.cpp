#include "arclp/presolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace arclp {

RuleSet default_rules() {
  return {PresolveRule::EmptyRow, PresolveRule::EmptyColumn, PresolveRule::RowSingleton,
          PresolveRule::FixedVarSingleRow, PresolveRule::SignImpliedPositive};
}

RuleSet all_rules() {
  RuleSet r;
  for (int i = 1; i <= 10; ++i) r.insert(static_cast<PresolveRule>(i));
  return r;
}

RuleSet parse_rules(const std::string& spec) {
  RuleSet r;
  if (spec == "none" || spec.empty()) return r;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int v = std::stoi(tok);
    if (v < 1 || v > 10) throw std::invalid_argument("presolve rule out of range: " + tok);
    r.insert(static_cast<PresolveRule>(v));
  }
  return r;
}

namespace {

constexpr double kDropTol = 1e-13;   // entries this small after updates are discarded
constexpr double kFeasTol = 1e-9;    // infeasibility detection slack
constexpr double kPropTol = 1e-12;   // proportionality comparison

// Working copy with synced row/column adjacency maps; all indices are
// original ids, rows/columns just get marked dead.
struct Work {
  int m, n;
  std::vector<std::map<int, double>> row;  // row -> {col: val}
  std::vector<std::map<int, double>> col;  // col -> {row: val}
  std::vector<bool> row_alive, col_alive;
  Vec b, c;
  double f_obj;
  double b_scale;
  PostsolveStack stack;

  explicit Work(const StandardFormLP& lp)
      : m(lp.rows()),
        n(lp.cols()),
        row(m),
        col(n),
        row_alive(m, true),
        col_alive(n, true),
        b(lp.b),
        c(lp.c),
        f_obj(lp.f_obj) {
    for (int j = 0; j < n; ++j) {
      auto rows = lp.A.col_rows(j);
      auto vals = lp.A.col_values(j);
      for (std::size_t p = 0; p < rows.size(); ++p) {
        row[rows[p]][j] = vals[p];
        col[j][rows[p]] = vals[p];
      }
    }
    b_scale = 1.0 + norm_inf(b);
    stack.original_cols = n;
    stack.original_rows = m;
  }

  void set_entry(int i, int j, double v) {
    if (std::abs(v) <= kDropTol) {
      row[i].erase(j);
      col[j].erase(i);
    } else {
      row[i][j] = v;
      col[j][i] = v;
    }
  }

  void kill_row(int i) {
    for (auto& [j, v] : row[i]) col[j].erase(i);
    row[i].clear();
    row_alive[i] = false;
  }

  void kill_col(int j) {
    for (auto& [i, v] : col[j]) row[i].erase(j);
    col[j].clear();
    col_alive[j] = false;
  }

  int nnz() const {
    int z = 0;
    for (int i = 0; i < m; ++i)
      if (row_alive[i]) z += static_cast<int>(row[i].size());
    return z;
  }

  [[noreturn]] void infeasible(int rule, const std::string& what) const {
    throw presolve_infeasible("presolve rule " + std::to_string(rule) + ": " + what);
  }
};

bool apply_empty_row(Work& w) {
  bool changed = false;
  for (int i = 0; i < w.m; ++i) {
    if (!w.row_alive[i] || !w.row[i].empty()) continue;
    if (std::abs(w.b[i]) > kFeasTol * w.b_scale)
      w.infeasible(1, "empty row with nonzero rhs");
    w.kill_row(i);
    changed = true;
  }
  return changed;
}

bool apply_empty_column(Work& w) {
  bool changed = false;
  for (int j = 0; j < w.n; ++j) {
    if (!w.col_alive[j] || !w.col[j].empty()) continue;
    if (w.c[j] < 0.0)
      throw presolve_unbounded("presolve rule 3: empty column with negative cost");
    w.kill_col(j);
    w.stack.records.push_back(PostsolveStack::FixedZero{j});
    changed = true;
  }
  return changed;
}

bool apply_row_singleton(Work& w) {
  bool changed = false;
  for (int i = 0; i < w.m; ++i) {
    if (!w.row_alive[i] || w.row[i].size() != 1) continue;
    auto [k, a] = *w.row[i].begin();
    double xk = w.b[i] / a;
    if (xk < -kFeasTol * (1.0 + std::abs(w.b[i] / a)))
      w.infeasible(5, "row singleton forces negative variable");
    if (xk < 0.0) xk = 0.0;
    w.f_obj += w.c[k] * xk;
    for (auto& [ell, v] : w.col[k])
      if (ell != i) w.b[ell] -= v * xk;
    w.kill_row(i);
    w.kill_col(k);
    w.stack.records.push_back(PostsolveStack::FixedValue{k, xk});
    changed = true;
  }
  return changed;
}

bool apply_fixed_var_single_row(Work& w) {
  bool changed = false;
  for (int i = 0; i < w.m; ++i) {
    if (!w.row_alive[i] || w.row[i].empty()) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (auto& [j, v] : w.row[i]) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (w.b[i] < -kFeasTol * w.b_scale && lo >= 0.0 && hi > 0.0)
      w.infeasible(7, "nonnegative row cannot reach negative rhs");
    if (w.b[i] > kFeasTol * w.b_scale && hi <= 0.0 && lo < 0.0)
      w.infeasible(7, "nonpositive row cannot reach positive rhs");
    if (std::abs(w.b[i]) <= kFeasTol * w.b_scale && (lo >= 0.0 || hi <= 0.0)) {
      std::vector<int> cols;
      for (auto& [j, v] : w.row[i]) cols.push_back(j);
      for (int j : cols) {
        w.kill_col(j);
        w.stack.records.push_back(PostsolveStack::FixedZero{j});
      }
      w.kill_row(i);
      changed = true;
    }
  }
  return changed;
}

// Fill change of eliminating column `piv` with pivot row `alpha`: negative or
// zero keeps nnz monotone, which gates rules 6 and 9.
int elimination_fill(const Work& w, int alpha, int piv, const std::vector<int>& skip_cols) {
  int fill = 0;
  int removed = static_cast<int>(w.row[alpha].size());  // pivot row disappears
  for (auto& [beta, a_beta_piv] : w.col[piv]) {
    if (beta == alpha) continue;
    ++removed;  // column entry disappears with the column
    for (auto& [k, a_alpha_k] : w.row[alpha]) {
      if (k == piv || std::count(skip_cols.begin(), skip_cols.end(), k)) continue;
      if (!w.row[beta].count(k)) ++fill;
    }
  }
  return fill - removed;
}

// Shared elimination core of rules 6 and 9: pivot on (alpha, piv), update c,
// b, f_obj, remove the pivot row and the listed columns.
void eliminate(Work& w, int alpha, int piv, const std::vector<int>& drop_cols) {
  double a_piv = w.row[alpha].at(piv);
  double b_alpha = w.b[alpha];
  std::map<int, double> pivot_row = w.row[alpha];

  w.f_obj += w.c[piv] * b_alpha / a_piv;
  for (auto& [k, a_k] : pivot_row) {
    if (k == piv || std::count(drop_cols.begin(), drop_cols.end(), k)) continue;
    w.c[k] -= w.c[piv] * a_k / a_piv;
  }
  std::vector<std::pair<int, double>> col_entries(w.col[piv].begin(), w.col[piv].end());
  for (auto& [beta, a_beta_piv] : col_entries) {
    if (beta == alpha) continue;
    double factor = a_beta_piv / a_piv;
    for (auto& [k, a_k] : pivot_row) {
      if (k == piv || std::count(drop_cols.begin(), drop_cols.end(), k)) continue;
      double cur = 0.0;
      if (auto itr = w.row[beta].find(k); itr != w.row[beta].end()) cur = itr->second;
      w.set_entry(beta, k, cur - factor * a_k);
    }
    w.b[beta] -= factor * b_alpha;
  }
  w.kill_row(alpha);
  w.kill_col(piv);
  for (int j : drop_cols)
    if (j != piv) w.kill_col(j);
}

bool apply_sign_implied_positive(Work& w) {
  for (int alpha = 0; alpha < w.m; ++alpha) {
    if (!w.row_alive[alpha] || w.row[alpha].empty()) continue;
    for (auto& [i, a_i] : w.row[alpha]) {
      if (w.b[alpha] * a_i < 0.0) continue;  // pivot sign must match rhs (zero rhs allowed)
      bool opposite = true;
      for (auto& [k, a_k] : w.row[alpha]) {
        if (k == i) continue;
        if (a_k * a_i >= 0.0) {
          opposite = false;
          break;
        }
      }
      if (!opposite) continue;
      if (elimination_fill(w, alpha, i, {}) > 0) continue;

      PostsolveStack::Substitution rec;
      rec.col = i;
      rec.pivot = a_i;
      rec.rhs = w.b[alpha];
      for (auto& [k, a_k] : w.row[alpha])
        if (k != i) rec.terms.emplace_back(k, a_k);
      eliminate(w, alpha, i, {});
      w.stack.records.push_back(std::move(rec));
      return true;  // structure changed, rescan
    }
  }
  return false;
}

// rows proportional: row_i == k * row_j elementwise
bool rows_proportional(const Work& w, int i, int j, double* factor) {
  if (w.row[i].size() != w.row[j].size()) return false;
  auto it1 = w.row[i].begin();
  auto it2 = w.row[j].begin();
  double k = 0.0;
  for (; it1 != w.row[i].end(); ++it1, ++it2) {
    if (it1->first != it2->first) return false;
    if (k == 0.0) k = it1->second / it2->second;
    if (std::abs(it1->second - k * it2->second) >
        kPropTol * (std::abs(it1->second) + std::abs(k * it2->second) + 1.0))
      return false;
  }
  *factor = k;
  return true;
}

bool apply_duplicate_rows(Work& w) {
  bool changed = false;
  // bucket rows by sparsity pattern hash, compare within buckets
  std::map<std::size_t, std::vector<int>> buckets;
  for (int i = 0; i < w.m; ++i) {
    if (!w.row_alive[i] || w.row[i].empty()) continue;
    std::size_t h = w.row[i].size();
    for (auto& [j, v] : w.row[i]) h = h * 1000003u + static_cast<std::size_t>(j);
    buckets[h].push_back(i);
  }
  for (auto& [h, rows] : buckets) {
    for (std::size_t a = 0; a < rows.size(); ++a) {
      if (!w.row_alive[rows[a]]) continue;
      for (std::size_t bidx = a + 1; bidx < rows.size(); ++bidx) {
        int i = rows[bidx], j = rows[a];
        if (!w.row_alive[i] || !w.row_alive[j]) continue;
        double k;
        if (!rows_proportional(w, i, j, &k)) continue;
        if (std::abs(w.b[i] - k * w.b[j]) > kFeasTol * w.b_scale * (1.0 + std::abs(k)))
          w.infeasible(2, "proportional rows with inconsistent rhs");
        w.kill_row(i);
        changed = true;
      }
    }
  }
  return changed;
}

bool cols_proportional(const Work& w, int i, int j, double* factor) {
  if (w.col[i].size() != w.col[j].size()) return false;
  auto it1 = w.col[i].begin();
  auto it2 = w.col[j].begin();
  double k = 0.0;
  for (; it1 != w.col[i].end(); ++it1, ++it2) {
    if (it1->first != it2->first) return false;
    if (k == 0.0) k = it2->second / it1->second;
    if (std::abs(it2->second - k * it1->second) >
        kPropTol * (std::abs(it2->second) + std::abs(k * it1->second) + 1.0))
      return false;
  }
  *factor = k;
  return true;
}

bool apply_duplicate_columns(Work& w) {
  bool changed = false;
  std::map<std::size_t, std::vector<int>> buckets;
  for (int j = 0; j < w.n; ++j) {
    if (!w.col_alive[j] || w.col[j].empty()) continue;
    std::size_t h = w.col[j].size();
    for (auto& [i, v] : w.col[j]) h = h * 1000003u + static_cast<std::size_t>(i);
    buckets[h].push_back(j);
  }
  for (auto& [h, cols] : buckets) {
    for (std::size_t a = 0; a < cols.size(); ++a) {
      int i = cols[a];
      if (!w.col_alive[i]) continue;
      for (std::size_t bidx = a + 1; bidx < cols.size(); ++bidx) {
        int j = cols[bidx];
        if (!w.col_alive[i] || !w.col_alive[j]) continue;
        double k;
        if (!cols_proportional(w, i, j, &k)) continue;
        // merged variable x_i + k x_j needs k > 0 and matching costs
        if (k <= 0.0) continue;
        if (std::abs(w.c[j] - k * w.c[i]) > kPropTol * (1.0 + std::abs(w.c[j]) + std::abs(k * w.c[i])))
          continue;
        w.kill_col(j);
        w.stack.records.push_back(PostsolveStack::DuplicateColumn{i, j, k});
        changed = true;
      }
    }
  }
  return changed;
}

bool apply_free_variable(Work& w) {
  for (int i = 0; i < w.n; ++i) {
    if (!w.col_alive[i] || w.col[i].empty()) continue;
    for (int j = i + 1; j < w.n; ++j) {
      if (!w.col_alive[j]) continue;
      double k;
      if (!cols_proportional(w, i, j, &k)) continue;
      if (std::abs(k + 1.0) > kPropTol * 10.0) continue;  // need A_.j == -A_.i
      if (std::abs(w.c[j] + w.c[i]) > kPropTol * (1.0 + std::abs(w.c[i]))) continue;
      int alpha = w.col[i].begin()->first;
      if (elimination_fill(w, alpha, i, {j}) > 0) continue;

      PostsolveStack::SplitSubstitution rec;
      rec.col_pos = i;
      rec.col_neg = j;
      rec.pivot = w.row[alpha].at(i);
      rec.rhs = w.b[alpha];
      for (auto& [kk, a_k] : w.row[alpha])
        if (kk != i && kk != j) rec.terms.emplace_back(kk, a_k);
      eliminate(w, alpha, i, {j});
      w.stack.records.push_back(std::move(rec));
      return true;
    }
  }
  return false;
}

bool apply_fixed_var_multi_row(Work& w) {
  for (int i = 0; i < w.m; ++i) {
    if (!w.row_alive[i]) continue;
    for (int j = i + 1; j < w.m; ++j) {
      if (!w.row_alive[j]) continue;
      for (double sign : {1.0, -1.0}) {  // b_i == b_j and b_i == -b_j variants
        if (std::abs(w.b[i] - sign * w.b[j]) > kFeasTol * w.b_scale) continue;
        // difference row d = row_i - sign*row_j must be one-signed
        std::map<int, double> diff = w.row[i];
        for (auto& [k, v] : w.row[j]) {
          diff[k] -= sign * v;
          if (std::abs(diff[k]) <= kDropTol) diff.erase(k);
        }
        if (diff.empty()) continue;  // duplicate rows, rule 2 territory
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (auto& [k, v] : diff) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        if (!(hi <= 0.0 || lo >= 0.0)) continue;
        std::vector<int> cols;
        for (auto& [k, v] : diff) cols.push_back(k);
        for (int k : cols) {
          w.kill_col(k);
          w.stack.records.push_back(PostsolveStack::FixedZero{k});
        }
        int victim = w.row[i].size() >= w.row[j].size() ? i : j;
        w.kill_row(victim);
        return true;
      }
    }
  }
  return false;
}

bool apply_two_row_singleton(Work& w) {
  for (int i = 0; i < w.m; ++i) {
    if (!w.row_alive[i]) continue;
    for (int j = i + 1; j < w.m; ++j) {
      if (!w.row_alive[j]) continue;
      // difference must be a singleton at column k
      int diff_col = -1;
      double diff_val = 0.0;
      bool singleton = true;
      std::map<int, double> diff = w.row[i];
      for (auto& [k, v] : w.row[j]) {
        diff[k] -= v;
        if (std::abs(diff[k]) <= kDropTol) diff.erase(k);
      }
      if (diff.size() != 1) singleton = false;
      if (!singleton) continue;
      diff_col = diff.begin()->first;
      diff_val = diff.begin()->second;

      double xk = (w.b[i] - w.b[j]) / diff_val;
      if (xk < -kFeasTol * (1.0 + std::abs(xk)))
        w.infeasible(10, "two-row singleton forces negative variable");
      if (xk < 0.0) xk = 0.0;
      w.f_obj += w.c[diff_col] * xk;
      std::vector<std::pair<int, double>> entries(w.col[diff_col].begin(), w.col[diff_col].end());
      for (auto& [ell, v] : entries) w.b[ell] -= v * xk;
      w.kill_col(diff_col);
      int victim = w.row[i].size() >= w.row[j].size() ? i : j;
      w.kill_row(victim);
      w.stack.records.push_back(PostsolveStack::FixedValue{diff_col, xk});
      return true;
    }
  }
  return false;
}

}  // namespace

PresolveResult presolve(const StandardFormLP& lp, const RuleSet& rules) {
  lp.validate();
  Work w(lp);

  auto enabled = [&](PresolveRule r) { return rules.count(r) > 0; };
  bool changed = true;
  while (changed) {
    changed = false;
    if (enabled(PresolveRule::EmptyRow)) changed |= apply_empty_row(w);
    if (enabled(PresolveRule::EmptyColumn)) changed |= apply_empty_column(w);
    if (enabled(PresolveRule::RowSingleton)) changed |= apply_row_singleton(w);
    if (enabled(PresolveRule::FixedVarSingleRow)) changed |= apply_fixed_var_single_row(w);
    if (enabled(PresolveRule::SignImpliedPositive))
      while (apply_sign_implied_positive(w)) changed = true;
    if (enabled(PresolveRule::DuplicateRows)) changed |= apply_duplicate_rows(w);
    if (enabled(PresolveRule::DuplicateColumns)) changed |= apply_duplicate_columns(w);
    if (enabled(PresolveRule::FreeVariable))
      while (apply_free_variable(w)) changed = true;
    if (enabled(PresolveRule::FixedVarMultiRow))
      while (apply_fixed_var_multi_row(w)) changed = true;
    if (enabled(PresolveRule::TwoRowSingleton))
      while (apply_two_row_singleton(w)) changed = true;
  }

  PresolveResult out;
  auto& stack = w.stack;
  for (int i = 0; i < w.m; ++i)
    if (w.row_alive[i]) stack.kept_rows.push_back(i);
  for (int j = 0; j < w.n; ++j)
    if (w.col_alive[j]) stack.kept_cols.push_back(j);

  const int m1 = static_cast<int>(stack.kept_rows.size());
  const int n1 = static_cast<int>(stack.kept_cols.size());
  std::vector<int> col_pos(w.n, -1);
  for (int t = 0; t < n1; ++t) col_pos[stack.kept_cols[t]] = t;

  std::vector<Triplet> ts;
  out.lp.b.resize(m1);
  out.lp.c.resize(n1);
  for (int t = 0; t < m1; ++t) {
    int i = stack.kept_rows[t];
    out.lp.b[t] = w.b[i];
    for (auto& [j, v] : w.row[i]) ts.push_back({t, col_pos[j], v});
  }
  for (int t = 0; t < n1; ++t) out.lp.c[t] = w.c[stack.kept_cols[t]];
  out.lp.A = SparseMatrix::from_triplets(m1, n1, std::move(ts));
  out.lp.f_obj = w.f_obj;
  if (!lp.row_names.empty()) {
    for (int i : stack.kept_rows) out.lp.row_names.push_back(lp.row_names[i]);
  }
  if (!lp.col_names.empty()) {
    for (int j : stack.kept_cols) out.lp.col_names.push_back(lp.col_names[j]);
  }
  out.stack = std::move(stack);
  return out;
}

Vec postsolve(const PostsolveStack& stack, const Vec& x_reduced) {
  if (x_reduced.size() != stack.kept_cols.size())
    throw std::invalid_argument("postsolve: reduced solution length mismatch");
  const double unset = std::numeric_limits<double>::quiet_NaN();
  Vec x(stack.original_cols, unset);
  for (std::size_t t = 0; t < stack.kept_cols.size(); ++t) x[stack.kept_cols[t]] = x_reduced[t];

  for (auto itr = stack.records.rbegin(); itr != stack.records.rend(); ++itr) {
    std::visit(
        [&](const auto& rec) {
          using T = std::decay_t<decltype(rec)>;
          if constexpr (std::is_same_v<T, PostsolveStack::FixedValue>) {
            x[rec.col] = rec.value;
          } else if constexpr (std::is_same_v<T, PostsolveStack::FixedZero>) {
            x[rec.col] = 0.0;
          } else if constexpr (std::is_same_v<T, PostsolveStack::Substitution>) {
            double acc = rec.rhs;
            for (auto& [k, coeff] : rec.terms) acc -= coeff * x[k];
            x[rec.col] = acc / rec.pivot;
          } else if constexpr (std::is_same_v<T, PostsolveStack::SplitSubstitution>) {
            double acc = rec.rhs;
            for (auto& [k, coeff] : rec.terms) acc -= coeff * x[k];
            double t = acc / rec.pivot;
            x[rec.col_pos] = std::max(t, 0.0);
            x[rec.col_neg] = x[rec.col_pos] - t;
          } else if constexpr (std::is_same_v<T, PostsolveStack::DuplicateColumn>) {
            x[rec.removed] = 0.0;  // merged mass stays on the kept column
          }
        },
        *itr);
  }

  for (double v : x)
    if (!std::isfinite(v)) throw std::logic_error("postsolve: unresolved variable");
  return x;
}

}  // namespace arclp
