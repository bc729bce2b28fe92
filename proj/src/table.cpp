#include "adiagrover/table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace adiagrover::io {

std::string format_double(double x) {
  char buf[40];
  // Try increasing precision until the value round-trips exactly.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    double parsed = 0.0;
    std::sscanf(buf, "%lg", &parsed);
    if (parsed == x || (x != x && parsed != parsed)) return buf;
  }
  return buf;
}

namespace {

bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\n\r") != std::string::npos;
}

void write_field(std::ostream& os, const std::string& s) {
  if (!needs_quoting(s)) {
    os << s;
    return;
  }
  os << '"';
  for (char c : s) {
    if (c == '"') os << '"';
    os << c;
  }
  os << '"';
}

}  // namespace

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("Table: no columns");
}

void Table::add_row(std::initializer_list<double> values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add_row(std::move(cells));
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw std::invalid_argument("Table: row width " +
                                std::to_string(cells.size()) +
                                " != column count " +
                                std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(cells));
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) os << ',';
    write_field(os, columns_[i]);
  }
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      write_field(os, row[i]);
    }
    os << '\n';
  }
}

void Table::write_csv(const std::filesystem::path& path) const {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  write_csv(out);
}

}  // namespace adiagrover::io
