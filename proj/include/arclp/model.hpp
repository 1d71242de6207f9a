#pragma once

#include <string>
#include <vector>

#include "arclp/sparse.hpp"
#include "arclp/vec.hpp"

namespace arclp {

// min c'x  s.t.  Ax = b, x >= 0.  The reported objective is f_obj + c'x;
// f_obj accumulates constant terms removed by presolve.
struct StandardFormLP {
  SparseMatrix A;
  Vec b;
  Vec c;
  double f_obj = 0.0;
  std::vector<std::string> row_names;  // optional, empty if unnamed
  std::vector<std::string> col_names;

  int rows() const { return A.rows(); }
  int cols() const { return A.cols(); }
  void validate() const;  // throws std::invalid_argument on structural problems
};

// Primal-dual point (x, lambda, s) with iteration counter. The solver keeps
// x > 0 and s > 0 strictly; oracle evaluations at a boundary point may relax
// that.
struct Iterate {
  Vec x;
  Vec lambda;
  Vec s;
  int k = 0;
};

struct Residuals {
  Vec r_b;  // Ax - b
  Vec r_c;  // A'lambda + s - c
};

enum class DirectionOrder { first, second };

// Either the first-derivative triple or the second-derivative triple of the
// search arc, depending on `order`.
struct Direction {
  Vec dx;
  Vec dlambda;
  Vec ds;
  DirectionOrder order = DirectionOrder::first;
};

Residuals residuals(const StandardFormLP& lp, const Iterate& it);
double duality_measure(const Iterate& it);  // x's / n
double objective_value(const StandardFormLP& lp, const Vec& x);

}  // namespace arclp
