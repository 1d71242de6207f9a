#pragma once

#include <array>
#include <functional>
#include <vector>

#include "arclp/ipm_kernel.hpp"
#include "arclp/model.hpp"

namespace arclp {

struct IterationRecord {
  int k = 0;
  double mu = 0.0;
  double norm_r_b = 0.0;
  double norm_r_c = 0.0;
  double sigma = 0.0;
  double alpha_x = 0.0;  // after beta scaling
  double alpha_s = 0.0;
  double beta = 0.0;
  bool cholesky_ok = true;  // false if this iteration needed degenerate repair
};

struct SolveResult {
  TerminationStatus status = TerminationStatus::IterationLimit;
  Vec x_full;          // postsolved, original column order
  double objective = 0.0;
  int iterations = 0;
  double infeasibility = 0.0;  // |(r_b, r_c)| at the final iterate of the solved problem
  std::vector<IterationRecord> log;
};

// Everything a test or plot needs from one completed iteration.
struct IterationEvent {
  const StandardFormLP& lp;
  const Iterate& before;
  const Residuals& res;
  double mu;
  double mu_aff;
  double sigma;
  const Direction& dir1;
  const Direction& dir2;
  double alpha_x_full;  // step lengths before beta scaling
  double alpha_s_full;
  double alpha_x;
  double alpha_s;
  double beta;
  const Iterate& after;
};
using IterationObserver = std::function<void(const IterationEvent&)>;

SolveResult solve(const StandardFormLP& lp, const SolverConfig& cfg,
                  const IterationObserver& observer = {});

// One presolve, one initial point, both methods.
struct ComparisonResult {
  SolveResult arc;
  SolveResult mehrotra;
};
ComparisonResult solve_compare(const StandardFormLP& lp, const SolverConfig& cfg,
                               const IterationObserver& arc_observer = {},
                               const IterationObserver& mehrotra_observer = {});

// Analytic feasible central path of the two-variable problem
// min x1 s.t. x1 + x2 = 5, x >= 0, used as a test oracle.
struct CentralPathPoint {
  std::array<double, 2> x;
  double lambda;
  std::array<double, 2> s;
};
CentralPathPoint central_path_reference(double mu);

// The fixed two-variable problem behind central_path_reference.
StandardFormLP example51_lp();

}  // namespace arclp
