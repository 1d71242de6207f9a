#include "arclp/mps_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

namespace arclp {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) tokens.push_back(t);
  return tokens;
}

double parse_number(const std::string& tok, int line_no) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw mps_parse_error("bad numeric value '" + tok + "'", line_no);
  return v;
}

enum class Section { None, Name, Rows, Columns, Rhs, Ranges, Bounds, EndData };

bool is_section_header(const std::string& line) {
  return !line.empty() && !std::isspace(static_cast<unsigned char>(line[0]));
}

}  // namespace

RawLP parse_mps(std::istream& in) {
  RawLP raw;
  std::unordered_map<std::string, int> row_index;  // constraint rows
  std::unordered_map<std::string, int> col_index;
  bool have_objective = false;
  bool saw_endata = false;
  Section section = Section::None;
  std::string line;
  int line_no = 0;

  auto lookup_col = [&](const std::string& name) {
    auto itr = col_index.find(name);
    if (itr != col_index.end()) return itr->second;
    int id = raw.num_cols();
    col_index.emplace(name, id);
    raw.col_names.push_back(name);
    return id;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;

    if (is_section_header(line)) {
      auto tokens = tokenize(line);
      const std::string& head = tokens[0];
      if (head == "NAME") {
        section = Section::Name;
        if (tokens.size() > 1) raw.problem_name = tokens[1];
      } else if (head == "ROWS") {
        section = Section::Rows;
      } else if (head == "COLUMNS") {
        section = Section::Columns;
      } else if (head == "RHS") {
        section = Section::Rhs;
      } else if (head == "RANGES") {
        throw mps_unsupported("RANGES section is not supported");
      } else if (head == "BOUNDS") {
        section = Section::Bounds;
      } else if (head == "ENDATA") {
        saw_endata = true;
        break;
      } else {
        throw mps_parse_error("unknown section '" + head + "'", line_no);
      }
      continue;
    }

    auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    switch (section) {
      case Section::Rows: {
        if (tokens.size() != 2) throw mps_parse_error("ROWS line needs sense and name", line_no);
        std::string sense = tokens[0];
        std::transform(sense.begin(), sense.end(), sense.begin(), ::toupper);
        const std::string& name = tokens[1];
        if (sense == "N") {
          // first N row is the objective; later free rows are ignored
          if (!have_objective) {
            raw.objective_name = name;
            have_objective = true;
          }
        } else if (sense == "E" || sense == "L" || sense == "G") {
          if (row_index.count(name)) throw mps_parse_error("duplicate row '" + name + "'", line_no);
          row_index.emplace(name, raw.num_rows());
          raw.row_names.push_back(name);
          raw.row_sense.push_back(static_cast<RowSense>(sense[0]));
        } else {
          throw mps_parse_error("bad row sense '" + tokens[0] + "'", line_no);
        }
        break;
      }
      case Section::Columns: {
        // col row value [row value]
        if (tokens.size() != 3 && tokens.size() != 5)
          throw mps_parse_error("COLUMNS line needs 3 or 5 fields", line_no);
        int col = lookup_col(tokens[0]);
        for (std::size_t f = 1; f + 1 < tokens.size(); f += 2) {
          const std::string& row_name = tokens[f];
          double value = parse_number(tokens[f + 1], line_no);
          if (have_objective && row_name == raw.objective_name) {
            raw.entries.push_back({col, -1, value});
          } else {
            auto itr = row_index.find(row_name);
            if (itr == row_index.end())
              throw mps_parse_error("unknown row '" + row_name + "'", line_no);
            raw.entries.push_back({col, itr->second, value});
          }
        }
        break;
      }
      case Section::Rhs: {
        if (tokens.size() != 3 && tokens.size() != 5)
          throw mps_parse_error("RHS line needs 3 or 5 fields", line_no);
        if (raw.rhs.empty()) raw.rhs.assign(raw.num_rows(), 0.0);
        for (std::size_t f = 1; f + 1 < tokens.size(); f += 2) {
          const std::string& row_name = tokens[f];
          double value = parse_number(tokens[f + 1], line_no);
          if (have_objective && row_name == raw.objective_name) {
            raw.objective_rhs += value;
          } else {
            auto itr = row_index.find(row_name);
            if (itr == row_index.end())
              throw mps_parse_error("unknown row '" + row_name + "'", line_no);
            raw.rhs[itr->second] += value;
          }
        }
        break;
      }
      case Section::Bounds: {
        // only restatements of the default x >= 0 are acceptable
        if (tokens.size() < 3) throw mps_parse_error("BOUNDS line too short", line_no);
        std::string type = tokens[0];
        std::transform(type.begin(), type.end(), type.begin(), ::toupper);
        bool default_bound = false;
        if (type == "PL") default_bound = true;
        if (type == "LO" && tokens.size() >= 4 && parse_number(tokens[3], line_no) == 0.0)
          default_bound = true;
        if (!default_bound)
          throw mps_unsupported("BOUNDS other than default nonnegativity are not supported");
        break;
      }
      case Section::Name:
      case Section::None:
        throw mps_parse_error("data before a section header", line_no);
      case Section::Ranges:
      case Section::EndData:
        break;
    }
  }

  if (!saw_endata) throw mps_parse_error("missing ENDATA", line_no);
  if (!have_objective) throw mps_parse_error("no N row declared", line_no);
  if (raw.rhs.empty()) raw.rhs.assign(raw.num_rows(), 0.0);

  // sum duplicate (col,row) entries
  std::sort(raw.entries.begin(), raw.entries.end(), [](const RawLP::Entry& a, const RawLP::Entry& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  std::vector<RawLP::Entry> merged;
  for (const auto& e : raw.entries) {
    if (!merged.empty() && merged.back().col == e.col && merged.back().row == e.row)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  raw.entries = std::move(merged);
  return raw;
}

RawLP parse_mps_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  return parse_mps(f);
}

StandardFormLP to_standard_form(const RawLP& raw) {
  const int m = raw.num_rows();
  const int n_struct = raw.num_cols();
  int n = n_struct;
  for (RowSense s : raw.row_sense)
    if (s != RowSense::E) ++n;

  StandardFormLP lp;
  lp.b = raw.rhs;
  lp.c.assign(n, 0.0);
  lp.f_obj = -raw.objective_rhs;
  lp.row_names = raw.row_names;
  lp.col_names = raw.col_names;

  std::vector<Triplet> ts;
  ts.reserve(raw.entries.size() + (n - n_struct));
  for (const auto& e : raw.entries) {
    if (e.row < 0)
      lp.c[e.col] += e.value;
    else
      ts.push_back({e.row, e.col, e.value});
  }
  int next = n_struct;
  for (int i = 0; i < m; ++i) {
    if (raw.row_sense[i] == RowSense::L) {
      ts.push_back({i, next, 1.0});
      lp.col_names.push_back("slack_" + raw.row_names[i]);
      ++next;
    } else if (raw.row_sense[i] == RowSense::G) {
      ts.push_back({i, next, -1.0});
      lp.col_names.push_back("surplus_" + raw.row_names[i]);
      ++next;
    }
  }
  lp.A = SparseMatrix::from_triplets(m, n, std::move(ts));
  lp.validate();
  return lp;
}

}  // namespace arclp
