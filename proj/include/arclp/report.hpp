#pragma once

#include <string>
#include <vector>

#include "arclp/driver.hpp"

namespace arclp {

enum class ReportFormat { text, csv, json };

struct CompareSide {
  int iter = 0;
  double objective = 0.0;
  double infeas = 0.0;
  TerminationStatus status = TerminationStatus::IterationLimit;
};

struct CompareRow {
  std::string name;
  int m0 = 0, n0 = 0;  // before presolve
  int m1 = 0, n1 = 0;  // after presolve
  CompareSide arc;
  CompareSide mehrotra;
  bool failed = false;      // parse or structural failure; sides not meaningful
  std::string error;
};

// Table-style comparison report. Text mode prints objectives to 5
// significant digits; csv and json carry full precision.
std::string render_compare(const std::vector<CompareRow>& rows, ReportFormat format);

}  // namespace arclp
