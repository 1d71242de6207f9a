#include "arclp/mehrotra_search.hpp"

#include <string>

#include "arclp/arc_search.hpp"
#include "arclp/ipm_kernel.hpp"

namespace arclp {

double line_alphas(const Vec& v, const Vec& dv, const Vec& ddv) {
  if (v.size() != dv.size() || v.size() != ddv.size())
    throw std::invalid_argument("line_alphas: size mismatch");
  Vec combined(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) combined[i] = dv[i] - ddv[i];
  return ratio_step(v, combined);
}

namespace {

void line_step(const Vec& w, const Vec& dw, const Vec& ddw, double alpha, Vec& out) {
  out.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] - alpha * (dw[i] - ddw[i]);
}

}  // namespace

Iterate line_update(const Iterate& it, const Direction& dir1, const Direction& dir2, double alpha_x,
                    double alpha_s) {
  Iterate next;
  line_step(it.x, dir1.dx, dir2.dx, alpha_x, next.x);
  line_step(it.lambda, dir1.dlambda, dir2.dlambda, alpha_s, next.lambda);
  line_step(it.s, dir1.ds, dir2.ds, alpha_s, next.s);
  next.k = it.k + 1;
  for (std::size_t i = 0; i < next.x.size(); ++i) {
    if (next.x[i] <= 0.0 || next.s[i] <= 0.0)
      throw positivity_violation("line_update left component " + std::to_string(i) +
                                 " outside the positive orthant");
  }
  return next;
}

}  // namespace arclp
