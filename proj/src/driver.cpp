#include "arclp/driver.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "arclp/arc_search.hpp"
#include "arclp/mehrotra_search.hpp"

namespace arclp {

namespace {

struct ReducedOutcome {
  TerminationStatus status = TerminationStatus::IterationLimit;
  Iterate it;                    // final iterate on the (possibly shrunk) problem
  std::vector<int> active_cols;  // current column -> presolved column id
  std::vector<IterationRecord> log;
  double final_infeasibility = 0.0;
};

// Algorithm main loop on a presolved, full-row-rank problem.
ReducedOutcome run_reduced(StandardFormLP lp, Iterate it, const SolverConfig& cfg,
                           const IterationObserver& observer) {
  ReducedOutcome out;
  out.active_cols.resize(lp.cols());
  for (int j = 0; j < lp.cols(); ++j) out.active_cols[j] = j;

  CholeskySymbolic symbolic;
  bool symbolic_valid = false;

  Residuals prev_res = residuals(lp, it);
  double last_ax = 1.0, last_as = 1.0;

  while (true) {
    Residuals res = residuals(lp, it);
    out.final_infeasibility = std::hypot(norm2(res.r_b), norm2(res.r_c));
    if (auto st = check_termination(lp, it, res, prev_res, last_ax, last_as, cfg)) {
      out.status = *st;
      break;
    }

    bool chol_ok = true;
    SymSparseMatrix M = assemble_normal(lp.A, it.x, it.s);
    if (!symbolic_valid && cfg.factorize_mode != FactorizeMode::dense &&
        (cfg.factorize_mode == FactorizeMode::sparse || M.n > 200)) {
      symbolic = analyze(M);
      symbolic_valid = true;
    }
    CholeskyFactor factor = factorize(M, cfg.factorize_mode, symbolic_valid ? &symbolic : nullptr);

    if (!factor.positive_definite()) {
      chol_ok = false;
      bool repaired = false;
      try {
        if (min_element(it.x) <= cfg.eps_x) {
          ColumnDrop drop = drop_small_columns(lp, it, cfg.eps_x);
          std::vector<bool> dropped(lp.cols(), false);
          for (int j : drop.dropped_cols) dropped[j] = true;
          std::vector<int> remap;
          for (int j = 0; j < lp.cols(); ++j)
            if (!dropped[j]) remap.push_back(out.active_cols[j]);
          out.active_cols = std::move(remap);
          lp = std::move(drop.lp);
          it = std::move(drop.it);
          repaired = true;
        } else if (cfg.dep_rows != DepRowPolicy::never) {
          RowReduction rr = remove_dependent_rows(lp.A, lp.b);
          if (!rr.removed.empty()) {
            std::vector<bool> gone(lp.rows(), false);
            for (int i : rr.removed) gone[i] = true;
            Vec lambda;
            for (int i = 0; i < lp.rows(); ++i)
              if (!gone[i]) lambda.push_back(it.lambda[i]);
            lp.A = std::move(rr.A);
            lp.b = std::move(rr.b);
            lp.row_names.clear();
            it.lambda = std::move(lambda);
            repaired = true;
          }
        }
      } catch (const all_columns_dropped&) {
        repaired = false;
      } catch (const inconsistent_rows&) {
        repaired = false;
      }
      if (!repaired) {
        out.status = TerminationStatus::StepTooSmall;
        break;
      }
      symbolic_valid = false;
      res = residuals(lp, it);  // the problem just changed shape
      prev_res = res;
      out.final_infeasibility = std::hypot(norm2(res.r_b), norm2(res.r_c));
      M = assemble_normal(lp.A, it.x, it.s);
      factor = factorize(M, cfg.factorize_mode);
      if (!factor.positive_definite()) {
        out.status = TerminationStatus::StepTooSmall;
        break;
      }
    }

    // Steps 1-3: derivatives and centering
    Direction dir1 = affine_direction(lp, it, res, factor);
    double alpha_x_aff = ratio_step(it.x, dir1.dx);
    double alpha_s_aff = ratio_step(it.s, dir1.ds);
    double mu = duality_measure(it);
    double mu_aff = 0.0;
    for (std::size_t j = 0; j < it.x.size(); ++j)
      mu_aff += (it.x[j] - alpha_x_aff * dir1.dx[j]) * (it.s[j] - alpha_s_aff * dir1.ds[j]);
    mu_aff /= static_cast<double>(it.x.size());
    double sigma = centering_sigma(mu, mu_aff, cfg);
    Direction dir2 = corrector_direction(lp, it, dir1, sigma, mu, factor);

    // Steps 4-5: method-specific step lengths, beta-scaled update
    double ax_full, as_full;
    if (cfg.method == SearchMethod::arc) {
      ax_full = arc_alphas(it.x, dir1.dx, dir2.dx);
      as_full = arc_alphas(it.s, dir1.ds, dir2.ds);
    } else {
      ax_full = line_alphas(it.x, dir1.dx, dir2.dx);
      as_full = line_alphas(it.s, dir1.ds, dir2.ds);
    }
    double beta = step_scale(it.k);
    double ax = beta * ax_full;
    double as = beta * as_full;

    Iterate next;
    try {
      next = cfg.method == SearchMethod::arc ? arc_update(it, dir1, dir2, ax, as)
                                             : line_update(it, dir1, dir2, ax, as);
    } catch (const positivity_violation&) {
      out.status = TerminationStatus::StepTooSmall;
      break;
    }

    out.log.push_back({it.k, mu, norm2(res.r_b), norm2(res.r_c), sigma, ax, as, beta, chol_ok});
    if (observer)
      observer(IterationEvent{lp, it, res, mu, mu_aff, sigma, dir1, dir2, ax_full, as_full, ax, as,
                              beta, next});

    prev_res = std::move(res);
    last_ax = ax;
    last_as = as;
    it = std::move(next);

    // degenerate handling after the update
    if (min_element(it.x) <= cfg.eps_x) {
      try {
        ColumnDrop drop = drop_small_columns(lp, it, cfg.eps_x);
        std::vector<bool> dropped(lp.cols(), false);
        for (int j : drop.dropped_cols) dropped[j] = true;
        std::vector<int> remap;
        for (int j = 0; j < lp.cols(); ++j)
          if (!dropped[j]) remap.push_back(out.active_cols[j]);
        out.active_cols = std::move(remap);
        lp = std::move(drop.lp);
        it = std::move(drop.it);
        symbolic_valid = false;
        prev_res = residuals(lp, it);  // problem changed; disarm the blowup check
      } catch (const all_columns_dropped&) {
        out.status = TerminationStatus::StepTooSmall;
        break;
      } catch (const inconsistent_rows&) {
        out.status = TerminationStatus::StepTooSmall;
        break;
      }
    }
  }
  out.it = std::move(it);
  return out;
}

SolveResult finish(const StandardFormLP& original, const PostsolveStack& stack,
                   const ReducedOutcome& outcome, int presolved_cols) {
  SolveResult result;
  result.status = outcome.status;
  result.log = outcome.log;
  result.iterations = static_cast<int>(outcome.log.size());
  result.infeasibility = outcome.final_infeasibility;

  Vec x_presolved(presolved_cols, 0.0);  // dropped columns report as zero
  for (std::size_t j = 0; j < outcome.active_cols.size(); ++j)
    x_presolved[outcome.active_cols[j]] = outcome.it.x[j];
  result.x_full = postsolve(stack, x_presolved);
  result.objective = objective_value(original, result.x_full);
  return result;
}

// Outcomes that presolve or the shape of the reduced problem decide without
// running the interior-point loop.
bool trivial_outcome(const StandardFormLP& reduced, ReducedOutcome& out) {
  if (reduced.cols() == 0) {
    double rhs = norm_inf(reduced.b);
    out.status = rhs <= 1e-9 * (1.0 + rhs) ? TerminationStatus::Optimal
                                           : TerminationStatus::InfeasibleDetected;
    out.final_infeasibility = reduced.rows() ? norm2(reduced.b) : 0.0;
    return true;
  }
  if (reduced.rows() == 0) {
    for (double cj : reduced.c) {
      if (cj < 0.0) {
        out.status = TerminationStatus::UnboundedDetected;
        out.it.x.assign(reduced.cols(), 0.0);
        out.active_cols.resize(reduced.cols());
        for (int j = 0; j < reduced.cols(); ++j) out.active_cols[j] = j;
        return true;
      }
    }
    out.status = TerminationStatus::Optimal;
    out.it.x.assign(reduced.cols(), 0.0);
    out.active_cols.resize(reduced.cols());
    for (int j = 0; j < reduced.cols(); ++j) out.active_cols[j] = j;
    return true;
  }
  return false;
}

struct Prepared {
  StandardFormLP lp;
  PostsolveStack stack;
  Iterate start;
  bool failed = false;
  TerminationStatus failure = TerminationStatus::Optimal;
  bool trivial = false;
  ReducedOutcome trivial_outcome_value;
};

Prepared prepare(const StandardFormLP& lp, const SolverConfig& cfg) {
  lp.validate();
  Prepared prep;
  try {
    PresolveResult pre = presolve(lp, cfg.presolve_rules);
    prep.lp = std::move(pre.lp);
    prep.stack = std::move(pre.stack);
  } catch (const presolve_infeasible&) {
    prep.failed = true;
    prep.failure = TerminationStatus::InfeasibleDetected;
    return prep;
  } catch (const presolve_unbounded&) {
    prep.failed = true;
    prep.failure = TerminationStatus::UnboundedDetected;
    return prep;
  }

  ReducedOutcome triv;
  if (trivial_outcome(prep.lp, triv)) {
    prep.trivial = true;
    prep.trivial_outcome_value = std::move(triv);
    return prep;
  }

  if (cfg.dep_rows == DepRowPolicy::always) {
    try {
      RowReduction rr = remove_dependent_rows(prep.lp.A, prep.lp.b);
      if (!rr.removed.empty()) {
        std::vector<bool> gone(prep.lp.rows(), false);
        for (int i : rr.removed) gone[i] = true;
        std::vector<std::string> names;
        for (int i = 0; i < prep.lp.rows(); ++i)
          if (!gone[i] && !prep.lp.row_names.empty()) names.push_back(prep.lp.row_names[i]);
        prep.lp.A = std::move(rr.A);
        prep.lp.b = std::move(rr.b);
        prep.lp.row_names = std::move(names);
        std::vector<int> kept;
        for (std::size_t t = 0; t < prep.stack.kept_rows.size(); ++t)
          if (!gone[t]) kept.push_back(prep.stack.kept_rows[t]);
        prep.stack.kept_rows = std::move(kept);
      }
    } catch (const inconsistent_rows&) {
      prep.failed = true;
      prep.failure = TerminationStatus::InfeasibleDetected;
      return prep;
    }
  }

  try {
    prep.start = initial_point(prep.lp, cfg.factorize_mode);
  } catch (const normal_matrix_singular&) {
    if (cfg.dep_rows != DepRowPolicy::never) {
      try {
        RowReduction rr = remove_dependent_rows(prep.lp.A, prep.lp.b);
        std::vector<bool> gone(prep.lp.rows(), false);
        for (int i : rr.removed) gone[i] = true;
        prep.lp.A = std::move(rr.A);
        prep.lp.b = std::move(rr.b);
        prep.lp.row_names.clear();
        std::vector<int> kept;
        for (std::size_t t = 0; t < prep.stack.kept_rows.size(); ++t)
          if (!gone[t]) kept.push_back(prep.stack.kept_rows[t]);
        prep.stack.kept_rows = std::move(kept);
      } catch (const inconsistent_rows&) {
        prep.failed = true;
        prep.failure = TerminationStatus::InfeasibleDetected;
        return prep;
      }
    }
    try {
      prep.start = initial_point(prep.lp, cfg.factorize_mode);
    } catch (const normal_matrix_singular&) {
      prep.start = initial_point_uniform(prep.lp);
    }
  }
  return prep;
}

SolveResult failed_result(const StandardFormLP& lp, TerminationStatus status) {
  SolveResult result;
  result.status = status;
  result.x_full.assign(lp.cols(), 0.0);
  result.objective = objective_value(lp, result.x_full);
  result.infeasibility = std::numeric_limits<double>::quiet_NaN();
  return result;
}

}  // namespace

SolveResult solve(const StandardFormLP& lp, const SolverConfig& cfg,
                  const IterationObserver& observer) {
  Prepared prep = prepare(lp, cfg);
  if (prep.failed) return failed_result(lp, prep.failure);
  if (prep.trivial)
    return finish(lp, prep.stack, prep.trivial_outcome_value, prep.lp.cols());

  ReducedOutcome outcome = run_reduced(prep.lp, prep.start, cfg, observer);
  return finish(lp, prep.stack, outcome, prep.lp.cols());
}

ComparisonResult solve_compare(const StandardFormLP& lp, const SolverConfig& cfg,
                               const IterationObserver& arc_observer,
                               const IterationObserver& mehrotra_observer) {
  Prepared prep = prepare(lp, cfg);
  ComparisonResult result;
  if (prep.failed) {
    result.arc = failed_result(lp, prep.failure);
    result.mehrotra = result.arc;
    return result;
  }
  if (prep.trivial) {
    result.arc = finish(lp, prep.stack, prep.trivial_outcome_value, prep.lp.cols());
    result.mehrotra = result.arc;
    return result;
  }

  SolverConfig arc_cfg = cfg;
  arc_cfg.method = SearchMethod::arc;
  SolverConfig meh_cfg = cfg;
  meh_cfg.method = SearchMethod::mehrotra;
  result.arc = finish(lp, prep.stack, run_reduced(prep.lp, prep.start, arc_cfg, arc_observer),
                      prep.lp.cols());
  result.mehrotra = finish(
      lp, prep.stack, run_reduced(prep.lp, prep.start, meh_cfg, mehrotra_observer), prep.lp.cols());
  return result;
}

CentralPathPoint central_path_reference(double mu) {
  if (mu <= 0.0) throw std::domain_error("central_path_reference: mu must be positive");
  double lambda = (5.0 - 2.0 * mu - std::sqrt((5.0 - 2.0 * mu) * (5.0 - 2.0 * mu) + 20.0 * mu)) / 10.0;
  CentralPathPoint p;
  p.lambda = lambda;
  p.s = {1.0 - lambda, -lambda};
  p.x = {mu / p.s[0], mu / p.s[1]};
  return p;
}

StandardFormLP example51_lp() {
  StandardFormLP lp;
  lp.A = SparseMatrix::from_triplets(1, 2, {{0, 0, 1.0}, {0, 1, 1.0}});
  lp.b = {5.0};
  lp.c = {1.0, 0.0};
  lp.row_names = {"r1"};
  lp.col_names = {"x1", "x2"};
  return lp;
}

}  // namespace arclp
