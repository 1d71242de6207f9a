#pragma once

#include <optional>
#include <stdexcept>

#include "arclp/model.hpp"
#include "arclp/normal_eq.hpp"
#include "arclp/presolve.hpp"

namespace arclp {

enum class SearchMethod { arc, mehrotra };
enum class DepRowPolicy { automatic, always, never };

struct SolverConfig {
  double tol = 1e-8;
  int max_iter = 200;
  double eps_x = 1e-6;
  double sigma_max = 0.5;      // centering parameter stays in (0, sigma_max]
  double min_step = 1e-8;
  RuleSet presolve_rules = default_rules();  // empty set disables presolve
  SearchMethod method = SearchMethod::arc;
  DepRowPolicy dep_rows = DepRowPolicy::automatic;
  FactorizeMode factorize_mode = FactorizeMode::automatic;
};

enum class TerminationStatus {
  Optimal,
  StepTooSmall,
  ResidualBlowup,
  IterationLimit,
  InfeasibleDetected,
  UnboundedDetected,
};

const char* to_string(TerminationStatus status);

class normal_matrix_singular : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two candidate starts: the least-squares heuristic shifted into the strict
// interior, and the uniform start rho*e with rho = sqrt(max(1, |b|inf,
// |c|inf)), lambda = 0. The one with the smaller duality measure wins.
// Throws normal_matrix_singular when AA' cannot be factorized.
Iterate initial_point(const StandardFormLP& lp,
                      FactorizeMode mode = FactorizeMode::automatic);
Iterate initial_point_uniform(const StandardFormLP& lp);

// First-derivative (affine) direction. The right-hand side comes from block
// elimination of the full system, so A*dx = r_b holds whether or not the
// passed residuals are exact.
Direction affine_direction(const StandardFormLP& lp, const Iterate& it, const Residuals& res,
                           const CholeskyFactor& factor);

// Second-derivative direction with centering: A*ddx = 0, A'ddl + dds = 0,
// S*ddx + X*dds = sigma*mu*e - 2*dx.*ds. Reuses the affine factorization.
Direction corrector_direction(const StandardFormLP& lp, const Iterate& it, const Direction& dir1,
                              double sigma, double mu, const CholeskyFactor& factor);

// Largest alpha in [0,1] with v - alpha*dv >= 0.
double ratio_step(const Vec& v, const Vec& dv);

// clamp((mu_aff/mu)^3, 1e-8, sigma_max)
double centering_sigma(double mu, double mu_aff, const SolverConfig& cfg);

// beta = 1 - exp(-(k+2)), increasing toward 1
double step_scale(int k);

// LIPSOL-style composite criterion plus the stall and blowup guards;
// nullopt means continue iterating.
std::optional<TerminationStatus> check_termination(const StandardFormLP& lp, const Iterate& it,
                                                   const Residuals& res, const Residuals& prev_res,
                                                   double alpha_x, double alpha_s,
                                                   const SolverConfig& cfg);

}  // namespace arclp
