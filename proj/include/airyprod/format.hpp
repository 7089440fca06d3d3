#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "airyprod/config.hpp"

namespace airyprod {

/// A cell of an output record: a real printed with 17 significant digits, an
/// integer, a boolean or a bare string.
using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// "RE+IMi" with both parts at 17 significant digits.
inline std::string format_complex(std::complex<double> v) {
  const std::string im = format_real(v.imag());
  return format_real(v.real()) + (im.front() == '-' ? "" : "+") + im + "i";
}

namespace detail {

inline std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

// Quotes a CSV field holding a comma, quote or line break.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += ch;
    }
  }
  return out + "\"";
}

inline std::string json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return "null";
    return format_real(*d);
  }
  if (std::holds_alternative<std::string>(c)) return json_string(std::get<std::string>(c));
  return cell_text(c);
}

}  // namespace detail

/// Header row then one line per record, comma separated, LF endings; fields
/// containing separators are double-quoted.
inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << detail::csv_field(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::csv_field(detail::cell_text(row[i]));
    os << '\n';
  }
}

/// A JSON array of flat objects keyed by column name.
inline void write_json(std::ostream& os, const Table& t) {
  os << "[";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << (r ? ",\n  {" : "\n  {");
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      os << (i ? ", " : "") << detail::json_string(t.columns[i]) << ": " << detail::json_cell(t.rows[r][i]);
    os << "}";
  }
  os << (t.rows.empty() ? "]\n" : "\n]\n");
}

inline void write_table(std::ostream& os, const Table& t, Format f) {
  if (f == Format::Csv) write_csv(os, t);
  else write_json(os, t);
}

}  // namespace airyprod
