#include "arclp/arc_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace arclp {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;

double clamped_asin(double v) { return std::asin(std::clamp(v, -1.0, 1.0)); }
double clamped_acos(double v) { return std::acos(std::clamp(v, -1.0, 1.0)); }
}  // namespace

double component_alpha(double v, double dv, double ddv) {
  if (v <= 0.0) throw std::domain_error("component_alpha: v must be strictly positive");

  double alpha;
  if (dv == 0.0 && ddv == 0.0) {
    alpha = kHalfPi;
  } else if (dv == 0.0) {
    alpha = v + ddv >= 0.0 ? kHalfPi : clamped_acos((v + ddv) / ddv);
  } else if (ddv == 0.0) {
    alpha = dv <= v ? kHalfPi : clamped_asin(v / dv);
  } else if (dv < 0.0 && ddv > 0.0) {
    alpha = kHalfPi;
  } else {
    double r = std::hypot(dv, ddv);
    if (dv > 0.0 && ddv > 0.0) {
      alpha = v + ddv >= r ? kHalfPi
                           : clamped_asin((v + ddv) / r) - clamped_asin(ddv / r);
    } else if (dv > 0.0) {  // ddv < 0
      alpha = v + ddv >= r ? kHalfPi
                           : clamped_asin((v + ddv) / r) + clamped_asin(-ddv / r);
    } else {  // dv < 0, ddv < 0
      alpha = v + ddv >= 0.0
                  ? kHalfPi
                  : std::numbers::pi - clamped_asin(-(v + ddv) / r) - clamped_asin(-ddv / r);
    }
  }
  return std::clamp(alpha, 0.0, kHalfPi);
}

double arc_alphas(const Vec& v, const Vec& dv, const Vec& ddv) {
  if (v.size() != dv.size() || v.size() != ddv.size())
    throw std::invalid_argument("arc_alphas: size mismatch");
  double alpha = kHalfPi;
  for (std::size_t i = 0; i < v.size(); ++i)
    alpha = std::min(alpha, component_alpha(v[i], dv[i], ddv[i]));
  return alpha;
}

namespace {

void ellipse_step(const Vec& w, const Vec& dw, const Vec& ddw, double alpha, Vec& out) {
  double sn, omc;  // sin(alpha), 1 - cos(alpha)
  if (alpha == kHalfPi) {
    sn = 1.0;
    omc = 1.0;
  } else {
    sn = std::sin(alpha);
    omc = 1.0 - std::cos(alpha);
  }
  out.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] - (dw[i] * sn - ddw[i] * omc);
}

}  // namespace

Iterate arc_update(const Iterate& it, const Direction& dir1, const Direction& dir2, double alpha_x,
                   double alpha_s) {
  Iterate next;
  ellipse_step(it.x, dir1.dx, dir2.dx, alpha_x, next.x);
  ellipse_step(it.lambda, dir1.dlambda, dir2.dlambda, alpha_s, next.lambda);
  ellipse_step(it.s, dir1.ds, dir2.ds, alpha_s, next.s);
  next.k = it.k + 1;
  for (std::size_t i = 0; i < next.x.size(); ++i) {
    if (next.x[i] <= 0.0 || next.s[i] <= 0.0)
      throw positivity_violation("arc_update left component " + std::to_string(i) +
                                 " outside the positive orthant");
  }
  return next;
}

double predicted_mu(const Iterate& it, const Direction& dir1, const Direction& dir2,
                    const Residuals& res, double sigma, double alpha) {
  const double n = static_cast<double>(it.x.size());
  double mu = duality_measure(it);
  double sn = std::sin(alpha);
  double omc = 1.0 - std::cos(alpha);
  double second = dot(dir2.dx, res.r_c) - dot(dir2.dlambda, res.r_b);
  double first = dot(dir1.dx, res.r_c) - dot(dir1.dlambda, res.r_b);
  return mu * (1.0 - sn + sigma * omc) + (second * sn * omc + first * omc * omc) / n;
}

}  // namespace arclp
