#include "kgx/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "kgx/errors.hpp"

namespace kgx {

namespace {

std::string shortest_round_trip(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw_validation("malformed numeric cell: '" + s + "'");
  return v;
}

}  // namespace

std::string format_double_17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";

  std::string s = shortest_round_trip(v);

  std::string mantissa = s, exponent;
  if (auto e = s.find('e'); e != std::string::npos) {
    mantissa = s.substr(0, e);
    exponent = s.substr(e);
  }

  int significant = 0;
  bool leading = true;
  for (char c : mantissa) {
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;  // leading zeros carry no precision
    leading = false;
    ++significant;
  }
  if (significant == 0) significant = 1;  // plain zero

  if (significant < 17) {
    if (mantissa.find('.') == std::string::npos) mantissa += '.';
    mantissa.append(static_cast<std::size_t>(17 - significant), '0');
  }
  return mantissa + exponent;
}

Cell cell_number(double v) {
  Cell c;
  c.text = format_double_17(v);
  c.value = v;
  return c;
}

Cell cell_exact(const Rational& q) {
  Cell c;
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  c.text = num.str();
  if (den != 1) c.text += "/" + den.str();
  c.value = q.convert_to<double>();
  return c;
}

Cell cell_empty() {
  Cell c;
  c.empty = true;
  c.value = std::numeric_limits<double>::quiet_NaN();
  return c;
}

Table::Table(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw_validation("table needs at least one column");
  for (const std::string& h : header_)
    if (h.find(',') != std::string::npos || h.find('\n') != std::string::npos)
      throw_validation("column names must not contain separators");
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != header_.size()) throw_validation("row width does not match the header");
  rows_.push_back(std::move(row));
}

void Table::require_increasing_first_column() const {
  for (std::size_t r = 1; r < rows_.size(); ++r)
    if (!(rows_[r][0].value > rows_[r - 1][0].value))
      throw_validation("first column must be strictly increasing");
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t c = 0; c < header_.size(); ++c) {
    if (c) os << ',';
    os << header_[c];
  }
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      if (!row[c].empty) os << row[c].text;
    }
    os << '\n';
  }
}

void Table::write_csv_file(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw_io("cannot open '" + path + "' for writing");
  write_csv(f);
  if (!f.good()) throw_io("write failed for '" + path + "'");
}

Table Table::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw_validation("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  auto split = [](const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
      if (ch == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    out.push_back(cur);
    return out;
  };

  Table t(split(line));
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> parts = split(line);
    if (parts.size() != t.cols()) throw_validation("CSV row width does not match the header");
    std::vector<Cell> row;
    row.reserve(parts.size());
    for (std::string& p : parts) {
      Cell c;
      if (p.empty()) {
        c = cell_empty();
      } else if (p.find('/') != std::string::npos) {
        c.text = p;
        c.value = rational_from_string(p).convert_to<double>();
      } else if (p == "nan") {
        c.text = p;
        c.value = std::numeric_limits<double>::quiet_NaN();
      } else {
        c.text = p;
        c.value = parse_double(p);
      }
      row.push_back(std::move(c));
    }
    t.add_row(std::move(row));
  }
  return t;
}

Table Table::read_csv_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw_io("cannot open '" + path + "' for reading");
  return read_csv(f);
}

namespace {

// Tick step of the form {1, 2, 5} * 10^k giving at most `target` intervals.
double nice_step(double span, int target) {
  if (!(span > 0)) return 1.0;
  double raw = span / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) return mag * m;
  }
  return mag * 10.0;
}

std::string svg_num(double v) {
  // fixed short rendering for coordinates; two decimals is below one pixel
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

std::string tick_label(double v) {
  if (v == 0) return "0";  // avoid "-0"
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b",
                                    "#17becf", "#7f7f7f"};

}  // namespace

void Table::write_svg(std::ostream& os) const {
  if (rows_.empty()) throw_validation("cannot plot an empty table");
  if (cols() < 2) throw_validation("plotting needs an x column and at least one y column");

  const double W = 800, H = 600;
  const double ml = 70, mr = 160, mt = 30, mb = 50;
  const double pw = W - ml - mr, ph = H - mt - mb;

  double xmin = rows_.front()[0].value, xmax = rows_.back()[0].value;
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  for (const auto& row : rows_)
    for (std::size_t c = 1; c < cols(); ++c) {
      if (row[c].empty || std::isnan(row[c].value)) continue;
      ymin = std::min(ymin, row[c].value);
      ymax = std::max(ymax, row[c].value);
    }
  if (!(ymin <= ymax)) throw_validation("no plottable values in the table");
  if (xmin == xmax) xmax = xmin + 1;
  if (ymin == ymax) {
    ymin -= 0.5;
    ymax += 0.5;
  }

  auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto Y = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
        "viewBox=\"0 0 800 600\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";

  // axes
  os << "<line x1=\"" << svg_num(ml) << "\" y1=\"" << svg_num(mt + ph) << "\" x2=\""
     << svg_num(ml + pw) << "\" y2=\"" << svg_num(mt + ph)
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << svg_num(ml) << "\" y1=\"" << svg_num(mt) << "\" x2=\"" << svg_num(ml)
     << "\" y2=\"" << svg_num(mt + ph) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  double xstep = nice_step(xmax - xmin, 8);
  for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-12 * xstep; x += xstep) {
    os << "<line x1=\"" << svg_num(X(x)) << "\" y1=\"" << svg_num(mt + ph) << "\" x2=\""
       << svg_num(X(x)) << "\" y2=\"" << svg_num(mt + ph + 5)
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << svg_num(X(x)) << "\" y=\"" << svg_num(mt + ph + 20)
       << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">"
       << tick_label(x) << "</text>\n";
  }
  double ystep = nice_step(ymax - ymin, 8);
  for (double y = std::ceil(ymin / ystep) * ystep; y <= ymax + 1e-12 * ystep; y += ystep) {
    os << "<line x1=\"" << svg_num(ml - 5) << "\" y1=\"" << svg_num(Y(y)) << "\" x2=\""
       << svg_num(ml) << "\" y2=\"" << svg_num(Y(y))
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << svg_num(ml - 8) << "\" y=\"" << svg_num(Y(y) + 4)
       << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">" << tick_label(y)
       << "</text>\n";
  }

  os << "<text x=\"" << svg_num(ml + pw / 2) << "\" y=\"" << svg_num(H - 10)
     << "\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\">" << header_[0]
     << "</text>\n";

  for (std::size_t c = 1; c < cols(); ++c) {
    const char* color = kPalette[(c - 1) % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::ostringstream pts;
    bool pen_down = false;
    std::string path;
    for (const auto& row : rows_) {
      if (row[c].empty || std::isnan(row[c].value)) {
        pen_down = false;
        continue;
      }
      path += pen_down ? " L " : " M ";
      path += svg_num(X(row[0].value)) + " " + svg_num(Y(row[c].value));
      pen_down = true;
    }
    if (!path.empty())
      os << "<path d=\"" << path.substr(1) << "\" fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1.5\"/>\n";

    double ly = mt + 16 * static_cast<double>(c);
    os << "<line x1=\"" << svg_num(ml + pw + 10) << "\" y1=\"" << svg_num(ly - 4) << "\" x2=\""
       << svg_num(ml + pw + 30) << "\" y2=\"" << svg_num(ly - 4) << "\" stroke=\"" << color
       << "\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << svg_num(ml + pw + 35) << "\" y=\"" << svg_num(ly)
       << "\" font-family=\"monospace\" font-size=\"12\">" << header_[c] << "</text>\n";
  }
  os << "</svg>\n";
}

void Table::write_svg_file(const std::string& path) const {
  // render first so that a degenerate table produces no file at all
  std::ostringstream buf;
  write_svg(buf);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw_io("cannot open '" + path + "' for writing");
  f << buf.str();
  if (!f.good()) throw_io("write failed for '" + path + "'");
}

}  // namespace kgx
