#include "arclp/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace arclp {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string short_obj(double v) { return fmt("%.5g", v); }
std::string short_infeas(double v) { return std::isnan(v) ? "-" : fmt("%.1e", v); }

const char* short_status(TerminationStatus st) {
  switch (st) {
    case TerminationStatus::Optimal: return "opt";
    case TerminationStatus::StepTooSmall: return "step";
    case TerminationStatus::ResidualBlowup: return "blow";
    case TerminationStatus::IterationLimit: return "iter";
    case TerminationStatus::InfeasibleDetected: return "infea";
    case TerminationStatus::UnboundedDetected: return "unbd";
  }
  return "?";
}

}  // namespace

std::string render_compare(const std::vector<CompareRow>& rows, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::csv) {
    out << "name,m0,n0,m1,n1,arc_iter,arc_obj,arc_infeas,meh_iter,meh_obj,meh_infeas,"
           "arc_status,meh_status\n";
    for (const auto& r : rows) {
      if (r.failed) {
        out << r.name << ",,,,,,,,,,,error,error\n";
        continue;
      }
      out << r.name << ',' << r.m0 << ',' << r.n0 << ',' << r.m1 << ',' << r.n1 << ','
          << r.arc.iter << ',' << fmt("%.17g", r.arc.objective) << ','
          << fmt("%.17g", r.arc.infeas) << ',' << r.mehrotra.iter << ','
          << fmt("%.17g", r.mehrotra.objective) << ',' << fmt("%.17g", r.mehrotra.infeas) << ','
          << to_string(r.arc.status) << ',' << to_string(r.mehrotra.status) << '\n';
    }
    return out.str();
  }

  if (format == ReportFormat::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json j;
      j["name"] = r.name;
      if (r.failed) {
        j["error"] = r.error;
      } else {
        j["m0"] = r.m0;
        j["n0"] = r.n0;
        j["m1"] = r.m1;
        j["n1"] = r.n1;
        j["arc_iter"] = r.arc.iter;
        j["arc_obj"] = r.arc.objective;
        j["arc_infeas"] = r.arc.infeas;
        j["meh_iter"] = r.mehrotra.iter;
        j["meh_obj"] = r.mehrotra.objective;
        j["meh_infeas"] = r.mehrotra.infeas;
        j["arc_status"] = to_string(r.arc.status);
        j["meh_status"] = to_string(r.mehrotra.status);
      }
      arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
  }

  // aligned text table
  char line[256];
  out << "problem      before prep    after prep     arc                                mehrotra\n";
  out << "             m      n       m      n       iter  objective    infeas   st    iter  objective    infeas   st\n";
  for (const auto& r : rows) {
    if (r.failed) {
      std::snprintf(line, sizeof(line), "%-12s error: %s\n", r.name.c_str(), r.error.c_str());
      out << line;
      continue;
    }
    std::snprintf(line, sizeof(line),
                  "%-12s %-6d %-7d %-6d %-7d %-5d %-12s %-8s %-5s %-5d %-12s %-8s %-5s\n",
                  r.name.c_str(), r.m0, r.n0, r.m1, r.n1, r.arc.iter,
                  short_obj(r.arc.objective).c_str(), short_infeas(r.arc.infeas).c_str(),
                  short_status(r.arc.status), r.mehrotra.iter,
                  short_obj(r.mehrotra.objective).c_str(), short_infeas(r.mehrotra.infeas).c_str(),
                  short_status(r.mehrotra.status));
    out << line;
  }
  return out.str();
}

}  // namespace arclp
