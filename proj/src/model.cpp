#include "arclp/model.hpp"

#include <cmath>
#include <stdexcept>

namespace arclp {

void StandardFormLP::validate() const {
  if (A.rows() < 1 || A.cols() < 1) throw std::invalid_argument("LP must have m >= 1, n >= 1");
  if (static_cast<int>(b.size()) != A.rows()) throw std::invalid_argument("b length != m");
  if (static_cast<int>(c.size()) != A.cols()) throw std::invalid_argument("c length != n");
  if (!std::isfinite(f_obj)) throw std::invalid_argument("f_obj not finite");
  if (!row_names.empty() && static_cast<int>(row_names.size()) != A.rows())
    throw std::invalid_argument("row_names length != m");
  if (!col_names.empty() && static_cast<int>(col_names.size()) != A.cols())
    throw std::invalid_argument("col_names length != n");
}

Residuals residuals(const StandardFormLP& lp, const Iterate& it) {
  if (static_cast<int>(it.x.size()) != lp.cols() || static_cast<int>(it.s.size()) != lp.cols() ||
      static_cast<int>(it.lambda.size()) != lp.rows())
    throw std::invalid_argument("residuals: iterate dimensions do not match LP");
  Residuals res;
  res.r_b = lp.A.multiply(it.x);
  for (int i = 0; i < lp.rows(); ++i) res.r_b[i] -= lp.b[i];
  res.r_c = lp.A.multiply_transpose(it.lambda);
  for (int j = 0; j < lp.cols(); ++j) res.r_c[j] += it.s[j] - lp.c[j];
  return res;
}

double duality_measure(const Iterate& it) {
  if (it.x.empty() || it.x.size() != it.s.size())
    throw std::invalid_argument("duality_measure: bad dimensions");
  return dot(it.x, it.s) / static_cast<double>(it.x.size());
}

double objective_value(const StandardFormLP& lp, const Vec& x) {
  if (x.size() != lp.c.size()) throw std::invalid_argument("objective_value: x length != n");
  return lp.f_obj + dot(lp.c, x);
}

}  // namespace arclp
