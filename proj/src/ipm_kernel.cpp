#include "arclp/ipm_kernel.hpp"

#include <algorithm>
#include <cmath>

namespace arclp {

const char* to_string(TerminationStatus status) {
  switch (status) {
    case TerminationStatus::Optimal: return "optimal";
    case TerminationStatus::StepTooSmall: return "step_too_small";
    case TerminationStatus::ResidualBlowup: return "residual_blowup";
    case TerminationStatus::IterationLimit: return "iteration_limit";
    case TerminationStatus::InfeasibleDetected: return "infeasible";
    case TerminationStatus::UnboundedDetected: return "unbounded";
  }
  return "unknown";
}

Iterate initial_point_uniform(const StandardFormLP& lp) {
  double rho = std::sqrt(std::max({1.0, norm_inf(lp.b), norm_inf(lp.c)}));
  Iterate it;
  it.x.assign(lp.cols(), rho);
  it.s.assign(lp.cols(), rho);
  it.lambda.assign(lp.rows(), 0.0);
  it.k = 0;
  return it;
}

Iterate initial_point(const StandardFormLP& lp, FactorizeMode mode) {
  const int n = lp.cols();
  Iterate uniform = initial_point_uniform(lp);

  Vec ones(n, 1.0);
  CholeskyFactor f = factorize(assemble_normal(lp.A, ones, ones), mode);
  if (!f.positive_definite())
    throw normal_matrix_singular("AA' factorization failed in initial_point");

  // least-squares heuristic
  Vec xt = lp.A.multiply_transpose(f.solve(lp.b));
  Vec lt = f.solve(lp.A.multiply(lp.c));
  Vec st = lp.A.multiply_transpose(lt);
  for (int j = 0; j < n; ++j) st[j] = lp.c[j] - st[j];

  double dx = std::max(-1.5 * min_element(xt), 0.0);
  double ds = std::max(-1.5 * min_element(st), 0.0);
  Vec xh = xt, sh = st;
  for (int j = 0; j < n; ++j) {
    xh[j] += dx;
    sh[j] += ds;
  }
  double xs = dot(xh, sh);
  double ex = 0.0, es = 0.0;
  for (int j = 0; j < n; ++j) {
    ex += xh[j];
    es += sh[j];
  }
  if (xs <= 0.0 || ex <= 0.0 || es <= 0.0) return uniform;

  Iterate cand;
  cand.x = xh;
  cand.s = sh;
  double shift_x = 0.5 * xs / es;
  double shift_s = 0.5 * xs / ex;
  for (int j = 0; j < n; ++j) {
    cand.x[j] += shift_x;
    cand.s[j] += shift_s;
  }
  cand.lambda = lt;
  cand.k = 0;
  if (min_element(cand.x) <= 0.0 || min_element(cand.s) <= 0.0) return uniform;

  return duality_measure(cand) <= duality_measure(uniform) ? cand : uniform;
}

Direction affine_direction(const StandardFormLP& lp, const Iterate& it, const Residuals& res,
                           const CholeskyFactor& factor) {
  const int n = lp.cols();
  Vec d(n);  // x/s
  for (int j = 0; j < n; ++j) d[j] = it.x[j] / it.s[j];

  Vec dr(n);
  for (int j = 0; j < n; ++j) dr[j] = d[j] * res.r_c[j];
  Vec rhs = lp.A.multiply(dr);
  Vec ax = lp.A.multiply(it.x);
  for (int i = 0; i < lp.rows(); ++i) rhs[i] += res.r_b[i] - ax[i];

  Direction dir;
  dir.order = DirectionOrder::first;
  dir.dlambda = factor.solve(rhs);
  dir.ds = lp.A.multiply_transpose(dir.dlambda);
  for (int j = 0; j < n; ++j) dir.ds[j] = res.r_c[j] - dir.ds[j];
  dir.dx.resize(n);
  for (int j = 0; j < n; ++j) dir.dx[j] = it.x[j] - d[j] * dir.ds[j];
  return dir;
}

Direction corrector_direction(const StandardFormLP& lp, const Iterate& it, const Direction& dir1,
                              double sigma, double mu, const CholeskyFactor& factor) {
  const int n = lp.cols();
  Vec w(n);  // sigma*mu*e - 2*dx.*ds
  for (int j = 0; j < n; ++j) w[j] = sigma * mu - 2.0 * dir1.dx[j] * dir1.ds[j];

  Vec ws(n);
  for (int j = 0; j < n; ++j) ws[j] = w[j] / it.s[j];
  Vec rhs = lp.A.multiply(ws);
  for (double& v : rhs) v = -v;

  Direction dir;
  dir.order = DirectionOrder::second;
  dir.dlambda = factor.solve(rhs);
  dir.ds = lp.A.multiply_transpose(dir.dlambda);
  for (double& v : dir.ds) v = -v;
  dir.dx.resize(n);
  for (int j = 0; j < n; ++j) dir.dx[j] = (w[j] - it.x[j] * dir.ds[j]) / it.s[j];
  return dir;
}

double ratio_step(const Vec& v, const Vec& dv) {
  if (v.size() != dv.size()) throw std::invalid_argument("ratio_step: size mismatch");
  double alpha = 1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] <= 0.0) throw std::domain_error("ratio_step: v must be strictly positive");
    if (dv[i] > 0.0) alpha = std::min(alpha, v[i] / dv[i]);
  }
  return alpha;
}

double centering_sigma(double mu, double mu_aff, const SolverConfig& cfg) {
  double ratio = mu_aff / mu;
  double sigma = ratio * ratio * ratio;
  return std::clamp(sigma, 1e-8, cfg.sigma_max);
}

double step_scale(int k) { return 1.0 - std::exp(-(k + 2.0)); }

std::optional<TerminationStatus> check_termination(const StandardFormLP& lp, const Iterate& it,
                                                   const Residuals& res, const Residuals& prev_res,
                                                   double alpha_x, double alpha_s,
                                                   const SolverConfig& cfg) {
  double nb = norm2(res.r_b);
  double nc = norm2(res.r_c);
  double mu = it.x.empty() ? 0.0 : duality_measure(it);
  double primal_obj = std::abs(dot(lp.c, it.x));
  double dual_obj = std::abs(dot(lp.b, it.lambda));
  double rel = nb / std::max(1.0, norm2(lp.b)) + nc / std::max(1.0, norm2(lp.c)) +
               mu / std::max({1.0, primal_obj, dual_obj});
  if (rel < cfg.tol) return TerminationStatus::Optimal;
  if (alpha_x < cfg.min_step && alpha_s < cfg.min_step) return TerminationStatus::StepTooSmall;
  if (10.0 * norm2(prev_res.r_b) < nb || 10.0 * norm2(prev_res.r_c) < nc)
    return TerminationStatus::ResidualBlowup;
  if (it.k >= cfg.max_iter) return TerminationStatus::IterationLimit;
  return std::nullopt;
}

}  // namespace arclp
