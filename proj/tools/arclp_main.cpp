#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arclp/driver.hpp"
#include "arclp/mps_io.hpp"
#include "arclp/report.hpp"

namespace fs = std::filesystem;
using namespace arclp;

namespace {

constexpr int kExitParseError = 2;
constexpr int kExitUnsupported = 3;

struct CommonFlags {
  double tol = 1e-8;
  int max_iter = 200;
  double eps_x = 1e-6;
  std::string presolve = "1,3,5,7,9";
  std::string dep_rows = "auto";
  std::string format = "text";
  unsigned seed = 0;  // reserved; the solver is deterministic
};

void add_common(CLI::App* app, CommonFlags& flags) {
  app->add_option("--tol", flags.tol, "termination tolerance");
  app->add_option("--max-iter", flags.max_iter, "iteration limit");
  app->add_option("--eps-x", flags.eps_x, "small-column threshold for degenerate handling");
  app->add_option("--presolve", flags.presolve, "presolve rules, e.g. 1,3,5,7,9 or none");
  app->add_option("--dep-rows", flags.dep_rows, "row-dependency removal: auto|always|never")
      ->check(CLI::IsMember({"auto", "always", "never"}));
  app->add_option("--format", flags.format, "output format: text|csv|json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  app->add_option("--seed", flags.seed, "reserved, runs are deterministic");
}

SolverConfig make_config(const CommonFlags& flags) {
  SolverConfig cfg;
  cfg.tol = flags.tol;
  cfg.max_iter = flags.max_iter;
  cfg.eps_x = flags.eps_x;
  cfg.presolve_rules = parse_rules(flags.presolve);
  cfg.dep_rows = flags.dep_rows == "always"  ? DepRowPolicy::always
                 : flags.dep_rows == "never" ? DepRowPolicy::never
                                             : DepRowPolicy::automatic;
  return cfg;
}

void print_solve(const std::string& label, const SolveResult& r) {
  std::printf("%-10s status=%-15s iter=%-4d objective=%.10g infeas=%.3e\n", label.c_str(),
              to_string(r.status), r.iterations, r.objective, r.infeasibility);
}

int cmd_solve(const std::string& path, const std::string& method, const CommonFlags& flags,
              bool verbose) {
  StandardFormLP lp;
  try {
    lp = to_standard_form(parse_mps_file(path));
  } catch (const mps_unsupported& e) {
    std::cerr << "unsupported MPS feature: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const std::exception& e) {
    std::cerr << "cannot read '" << path << "': " << e.what() << "\n";
    return kExitParseError;
  }

  SolverConfig cfg = make_config(flags);
  auto report_log = [&](const SolveResult& r) {
    if (!verbose) return;
    std::printf("  %-3s %-12s %-10s %-10s %-8s %-8s %-8s %-8s\n", "k", "mu", "|r_b|", "|r_c|",
                "sigma", "alpha_x", "alpha_s", "beta");
    for (const auto& rec : r.log)
      std::printf("  %-3d %-12.4e %-10.3e %-10.3e %-8.2e %-8.4f %-8.4f %-8.4f%s\n", rec.k, rec.mu,
                  rec.norm_r_b, rec.norm_r_c, rec.sigma, rec.alpha_x, rec.alpha_s, rec.beta,
                  rec.cholesky_ok ? "" : "  [pivot repair]");
  };

  bool ok = true;
  if (method == "both") {
    ComparisonResult both = solve_compare(lp, cfg);
    print_solve("arc", both.arc);
    report_log(both.arc);
    print_solve("mehrotra", both.mehrotra);
    report_log(both.mehrotra);
    ok = both.arc.status == TerminationStatus::Optimal &&
         both.mehrotra.status == TerminationStatus::Optimal;
  } else {
    cfg.method = method == "mehrotra" ? SearchMethod::mehrotra : SearchMethod::arc;
    SolveResult r = solve(lp, cfg);
    print_solve(method, r);
    report_log(r);
    ok = r.status == TerminationStatus::Optimal;
  }
  return ok ? 0 : 1;
}

int cmd_compare(const std::string& dir, const CommonFlags& flags, const std::string& out_path) {
  std::vector<fs::path> files;
  try {
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.path().extension() == ".mps") files.push_back(entry.path());
    }
  } catch (const std::exception& e) {
    std::cerr << "cannot read directory '" << dir << "': " << e.what() << "\n";
    return kExitParseError;
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "no .mps files in '" << dir << "'\n";
    return kExitParseError;
  }

  SolverConfig cfg = make_config(flags);
  std::vector<CompareRow> rows;
  bool all_optimal = true;
  for (const auto& file : files) {
    CompareRow row;
    row.name = file.stem().string();
    try {
      StandardFormLP lp = to_standard_form(parse_mps_file(file.string()));
      row.m0 = lp.rows();
      row.n0 = lp.cols();
      PresolveResult pre = presolve(lp, cfg.presolve_rules);
      row.m1 = pre.lp.rows();
      row.n1 = pre.lp.cols();
      ComparisonResult both = solve_compare(lp, cfg);
      row.arc = {both.arc.iterations, both.arc.objective, both.arc.infeasibility,
                 both.arc.status};
      row.mehrotra = {both.mehrotra.iterations, both.mehrotra.objective,
                      both.mehrotra.infeasibility, both.mehrotra.status};
      if (row.arc.status != TerminationStatus::Optimal ||
          row.mehrotra.status != TerminationStatus::Optimal)
        all_optimal = false;
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
      all_optimal = false;
    }
    rows.push_back(std::move(row));
  }

  ReportFormat format = flags.format == "csv"    ? ReportFormat::csv
                        : flags.format == "json" ? ReportFormat::json
                                                 : ReportFormat::text;
  std::string rendered = render_compare(rows, format);
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream f(out_path);
    f << rendered;
  }
  return all_optimal ? 0 : 1;
}

// Data behind the two-variable illustration: the analytic central path, the
// arc-mode iterate sequence, and the quarter-ellipse of every iteration.
int cmd_pathdata(const CommonFlags& flags, const std::string& out_path, int mu_points,
                 int ellipse_points) {
  StandardFormLP lp = example51_lp();
  SolverConfig cfg = make_config(flags);
  cfg.method = SearchMethod::arc;

  std::ostringstream out;
  out << "series,k,param,x1,x2\n";
  char line[160];

  double mu_hi = 10.0, mu_lo = 1e-10;
  for (int i = 0; i < mu_points; ++i) {
    double t = static_cast<double>(i) / (mu_points - 1);
    double mu = mu_hi * std::pow(mu_lo / mu_hi, t);
    CentralPathPoint p = central_path_reference(mu);
    std::snprintf(line, sizeof(line), "central_path,0,%.12g,%.12g,%.12g\n", mu, p.x[0], p.x[1]);
    out << line;
  }

  bool first = true;
  SolveResult result = solve(lp, cfg, [&](const IterationEvent& ev) {
    if (first) {
      std::snprintf(line, sizeof(line), "iterate,%d,0,%.12g,%.12g\n", ev.before.k, ev.before.x[0],
                    ev.before.x[1]);
      out << line;
      first = false;
    }
    for (int i = 0; i < ellipse_points; ++i) {
      double a = (std::numbers::pi / 2.0) * i / (ellipse_points - 1);
      double sn = std::sin(a), omc = 1.0 - std::cos(a);
      double x1 = ev.before.x[0] - ev.dir1.dx[0] * sn + ev.dir2.dx[0] * omc;
      double x2 = ev.before.x[1] - ev.dir1.dx[1] * sn + ev.dir2.dx[1] * omc;
      std::snprintf(line, sizeof(line), "ellipse,%d,%.12g,%.12g,%.12g\n", ev.before.k, a, x1, x2);
      out << line;
    }
    std::snprintf(line, sizeof(line), "iterate,%d,0,%.12g,%.12g\n", ev.after.k, ev.after.x[0],
                  ev.after.x[1]);
    out << line;
  });

  if (out_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(out_path);
    f << out.str();
  }
  return result.status == TerminationStatus::Optimal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arc-search and Mehrotra predictor-corrector LP solver"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string path, method = "arc", out_path, dir;
  bool verbose = false;
  int mu_points = 400, ellipse_points = 128;

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one MPS file");
  solve_cmd->add_option("file", path, "MPS file")->required();
  solve_cmd->add_option("--method", method, "arc|mehrotra|both")
      ->check(CLI::IsMember({"arc", "mehrotra", "both"}));
  solve_cmd->add_flag("-v,--verbose", verbose, "print the iteration log");
  add_common(solve_cmd, flags);

  CLI::App* compare_cmd = app.add_subcommand("compare", "run both methods over a directory");
  compare_cmd->add_option("dir", dir, "directory of MPS files")->required();
  compare_cmd->add_option("-o,--output", out_path, "write the report here instead of stdout");
  add_common(compare_cmd, flags);

  CLI::App* path_cmd = app.add_subcommand("pathdata", "emit plot data for the 2-variable example");
  path_cmd->add_option("-o,--output", out_path, "write data here instead of stdout");
  path_cmd->add_option("--mu-points", mu_points, "central path sample count");
  path_cmd->add_option("--ellipse-points", ellipse_points, "samples per iteration ellipse");
  add_common(path_cmd, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) return cmd_solve(path, method, flags, verbose);
    if (compare_cmd->parsed()) return cmd_compare(dir, flags, out_path);
    if (path_cmd->parsed()) return cmd_pathdata(flags, out_path, mu_points, ellipse_points);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  }
  return 0;
}
