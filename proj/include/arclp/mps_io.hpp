#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "arclp/model.hpp"

namespace arclp {

class mps_parse_error : public std::runtime_error {
 public:
  mps_parse_error(const std::string& msg, int line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class mps_unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RowSense : char { E = 'E', L = 'L', G = 'G', N = 'N' };

// An MPS file as read: rows in declaration order, entries by index into the
// row/column registries. Exactly one N row serves as objective.
struct RawLP {
  struct Entry {
    int col;
    int row;  // -1 means the objective row
    double value;
  };

  std::string problem_name;
  std::string objective_name;
  std::vector<std::string> row_names;  // constraint rows only
  std::vector<RowSense> row_sense;    // parallel to row_names, never N
  std::vector<std::string> col_names;
  std::vector<Entry> entries;         // duplicate (col,row) summed
  Vec rhs;                            // per constraint row
  double objective_rhs = 0.0;         // RHS entry on the N row, as written

  int num_rows() const { return static_cast<int>(row_names.size()); }
  int num_cols() const { return static_cast<int>(col_names.size()); }
};

RawLP parse_mps(std::istream& in);
RawLP parse_mps_file(const std::string& path);

// Slack augmentation: E rows copied, L rows gain a +1 slack, G rows a -1
// surplus, all with zero cost. Objective constant enters f_obj sign-flipped.
StandardFormLP to_standard_form(const RawLP& raw);

}  // namespace arclp
