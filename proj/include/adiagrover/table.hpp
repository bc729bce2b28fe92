#pragma once

#include <filesystem>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace adiagrover::io {

// Shortest decimal form that round-trips the double ("%.17g" fallback off
// a shortest-representation scan); '.' decimal separator regardless of
// locale, so outputs are platform-stable and byte-reproducible.
std::string format_double(double x);

// Column-labelled rectangular table. Cells are stored as already-formatted
// strings; add_row converts doubles via format_double. CSV output follows
// RFC-4180-style quoting (fields containing comma, quote, or newline are
// quoted, quotes doubled), with a mandatory header row.
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  void add_row(std::initializer_list<double> values);
  void add_row(std::vector<std::string> cells);

  std::size_t n_rows() const { return rows_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }

  void write_csv(std::ostream& os) const;
  void write_csv(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace adiagrover::io
