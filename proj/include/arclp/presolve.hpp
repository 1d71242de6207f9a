#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "arclp/model.hpp"

namespace arclp {

enum class PresolveRule : int {
  EmptyRow = 1,
  DuplicateRows = 2,
  EmptyColumn = 3,
  DuplicateColumns = 4,
  RowSingleton = 5,
  FreeVariable = 6,
  FixedVarSingleRow = 7,
  FixedVarMultiRow = 8,
  SignImpliedPositive = 9,
  TwoRowSingleton = 10,
};

using RuleSet = std::set<PresolveRule>;

RuleSet default_rules();  // {1, 3, 5, 7, 9}
RuleSet all_rules();
RuleSet parse_rules(const std::string& spec);  // "1,3,5,7,9" or "none"

class presolve_infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class presolve_unbounded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ordered record of reductions. Column ids refer to the LP handed to
// presolve(). Replayed in reverse, each record reconstructs its eliminated
// variable(s) from values already present.
struct PostsolveStack {
  struct FixedValue {  // rules 5, 10
    int col;
    double value;
  };
  struct FixedZero {  // rules 3, 7, 8
    int col;
  };
  struct Substitution {  // rule 9: x_col = (rhs - sum coeff*x) / pivot
    int col;
    double pivot;
    double rhs;
    std::vector<std::pair<int, double>> terms;
  };
  struct SplitSubstitution {  // rule 6: x_pos - x_neg = (rhs - sum)/pivot
    int col_pos;
    int col_neg;
    double pivot;
    double rhs;
    std::vector<std::pair<int, double>> terms;
  };
  struct DuplicateColumn {  // rule 4: kept absorbed x_kept + factor*x_removed
    int kept;
    int removed;
    double factor;
  };
  using Record =
      std::variant<FixedValue, FixedZero, Substitution, SplitSubstitution, DuplicateColumn>;

  std::vector<Record> records;   // application order
  std::vector<int> kept_cols;    // original ids of surviving columns, in order
  std::vector<int> kept_rows;    // original ids of surviving rows, in order
  int original_cols = 0;
  int original_rows = 0;

  bool empty() const { return records.empty(); }
};

struct PresolveResult {
  StandardFormLP lp;  // may have 0 rows or columns if fully reduced
  PostsolveStack stack;
};

// Applies the enabled rules repeatedly until none fires. Throws
// presolve_infeasible / presolve_unbounded on detection.
PresolveResult presolve(const StandardFormLP& lp, const RuleSet& rules);

// Reconstructs the full-length primal vector from a reduced solution.
Vec postsolve(const PostsolveStack& stack, const Vec& x_reduced);

}  // namespace arclp
