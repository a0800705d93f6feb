#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kgx/scalars.hpp"

namespace kgx {

// One rendered value: the exact text that will appear in the CSV plus its
// numeric reading. Keeping the text authoritative makes write -> read ->
// write cycles byte-stable.
struct Cell {
  std::string text;
  double value = 0.0;
  bool empty = false;
};

Cell cell_number(double v);             // shortest round-trip, padded to 17 significant digits
Cell cell_exact(const Rational& q);     // verbatim integer or reduced fraction
Cell cell_empty();

std::string format_double_17(double v);

class Table {
 public:
  explicit Table(std::vector<std::string> header);

  void add_row(std::vector<Cell> row);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return header_.size(); }
  const std::string& column_name(std::size_t c) const { return header_.at(c); }
  const Cell& cell(std::size_t r, std::size_t c) const { return rows_.at(r).at(c); }

  // first column strictly increasing; sweep tables promise this
  void require_increasing_first_column() const;

  void write_csv(std::ostream& os) const;
  void write_csv_file(const std::string& path) const;
  static Table read_csv(std::istream& is);
  static Table read_csv_file(const std::string& path);

  // Deterministic single-panel line chart: column 0 on x, every other column
  // as one polyline. Fixed 800x600 viewport, fixed tick selection, no
  // timestamps: identical input gives identical bytes.
  void write_svg(std::ostream& os) const;
  void write_svg_file(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace kgx
