#pragma once

#include <cctype>
#include <charconv>
#include <complex>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "airyprod/contour.hpp"
#include "airyprod/error.hpp"

namespace airyprod {

enum class Format { Csv, Json };

/// Everything the CLI reads from `key = value` files and flags.
struct RunConfig {
  // Quadrature and pass/fail tolerances.
  double tol = 1e-10;
  double tail_tol = 1e-16;
  std::size_t node_ceiling = 400000;
  double max_radius = 60.0;
  bool saddle_hint = true;
  double route_tol = 1e-7;
  double identity_tol = 1e-10;
  double ode_tol = 1e-10;
  double diff_tol = 1e-8;
  double real_tol = 1e-8;
  double greens_tol = 1e-6;
  double weak_field_tol = 1e-3;
  double operator_tol = 1e-4;

  Format format = Format::Csv;
  std::uint64_t seed = 20240611;

  // Verification grids.
  double z_radius = 4.0;
  double z0_radius = 3.0;
  std::size_t ode_points = 500;
  std::size_t route_points = 2000;
  std::size_t identity_points = 400;
  std::size_t relation_per_sector = 50;
  std::size_t zero_shift_points = 20;
  std::size_t diff_per_sector = 50;
  std::size_t real_points = 200;
  std::size_t greens_samples = 100;
  std::size_t operator_points = 20;

  // Tables.
  double product_re_min = -5.0;
  double product_re_max = 5.0;
  std::size_t product_re_count = 41;
  double product_im_min = 0.0;
  double product_im_max = 0.0;
  std::size_t product_im_count = 1;
  std::complex<double> product_z0{0.0, 0.0};
  double greens_eta_min = 0.1;
  double greens_eta_max = 5.0;
  std::size_t greens_eta_count = 50;
  double greens_xi = 0.0;
  double greens_field = 0.1;

  EngineConfig engine() const { return {tol, tail_tol, node_ceiling, max_radius, saddle_hint}; }
};

/// Parses "RE+IMi", "RE-IMi", "RE", "IMi" (also "i", "-i", "RE+i").
inline std::complex<double> parse_complex(std::string_view text) {
  auto fail = [&]() -> std::complex<double> {
    throw Error(ErrorKind::InvalidArgument, "cannot parse complex literal '" + std::string(text) + "'");
  };
  auto number = [&](std::string_view s) -> double {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) fail();
    return v;
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return fail();
  if (text.back() != 'i') {
    if (text == "+" || text == "-") return fail();
    return {number(text), 0.0};
  }
  text.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = text.size(); i-- > 1;) {
    if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, number(text)};
  return {number(text.substr(0, split)), number(text.substr(split))};
}

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline double parse_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw Error(ErrorKind::ConfigError, "config: '" + key + "' expects a real number, got '" + v + "'");
  return out;
}

inline std::uint64_t parse_unsigned(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw Error(ErrorKind::ConfigError, "config: '" + key + "' expects a non-negative integer, got '" + v + "'");
  return out;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "on" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "off" || v == "0" || v == "no") return false;
  throw Error(ErrorKind::ConfigError, "config: '" + key + "' expects true/false, got '" + v + "'");
}

}  // namespace detail

inline Format parse_format(const std::string& v) {
  if (v == "csv") return Format::Csv;
  if (v == "json") return Format::Json;
  throw Error(ErrorKind::ConfigError, "format must be csv or json, got '" + v + "'");
}

/// Applies one `key = value` setting.
inline void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  using Setter = std::function<void(const std::string&)>;
  auto real = [&](double& field) -> Setter { return [&, key](const std::string& v) { field = detail::parse_real(key, v); }; };
  auto count = [&](std::size_t& field) -> Setter {
    return [&, key](const std::string& v) { field = static_cast<std::size_t>(detail::parse_unsigned(key, v)); };
  };
  const std::map<std::string, Setter, std::less<>> table = {
      {"tol", real(c.tol)},
      {"tail_tol", real(c.tail_tol)},
      {"node_ceiling", count(c.node_ceiling)},
      {"max_radius", real(c.max_radius)},
      {"saddle_hint", [&](const std::string& v) { c.saddle_hint = detail::parse_bool(key, v); }},
      {"route_tol", real(c.route_tol)},
      {"identity_tol", real(c.identity_tol)},
      {"ode_tol", real(c.ode_tol)},
      {"diff_tol", real(c.diff_tol)},
      {"real_tol", real(c.real_tol)},
      {"greens_tol", real(c.greens_tol)},
      {"weak_field_tol", real(c.weak_field_tol)},
      {"operator_tol", real(c.operator_tol)},
      {"format", [&](const std::string& v) { c.format = parse_format(v); }},
      {"seed", [&](const std::string& v) { c.seed = detail::parse_unsigned(key, v); }},
      {"z_radius", real(c.z_radius)},
      {"z0_radius", real(c.z0_radius)},
      {"ode_points", count(c.ode_points)},
      {"route_points", count(c.route_points)},
      {"identity_points", count(c.identity_points)},
      {"relation_per_sector", count(c.relation_per_sector)},
      {"zero_shift_points", count(c.zero_shift_points)},
      {"diff_per_sector", count(c.diff_per_sector)},
      {"real_points", count(c.real_points)},
      {"greens_samples", count(c.greens_samples)},
      {"operator_points", count(c.operator_points)},
      {"product.re_min", real(c.product_re_min)},
      {"product.re_max", real(c.product_re_max)},
      {"product.re_count", count(c.product_re_count)},
      {"product.im_min", real(c.product_im_min)},
      {"product.im_max", real(c.product_im_max)},
      {"product.im_count", count(c.product_im_count)},
      {"product.z0",
       [&](const std::string& v) {
         try {
           c.product_z0 = parse_complex(v);
         } catch (const Error& e) {
           throw Error(ErrorKind::ConfigError, std::string("config: product.z0: ") + e.what());
         }
       }},
      {"greens.eta_min", real(c.greens_eta_min)},
      {"greens.eta_max", real(c.greens_eta_max)},
      {"greens.eta_count", count(c.greens_eta_count)},
      {"greens.xi", real(c.greens_xi)},
      {"greens.field", real(c.greens_field)},
  };
  auto it = table.find(key);
  if (it == table.end()) throw Error(ErrorKind::ConfigError, "config: unknown key '" + key + "'");
  it->second(value);
}

/// Checks counts and tolerance ranges; throws ConfigError naming the field.
inline void validate(const RunConfig& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::ConfigError, std::string("config: ") + what);
  };
  require(c.tol >= 1e-14 && c.tol <= 1e-4, "tol must lie in [1e-14, 1e-4]");
  require(c.tail_tol > 0.0 && c.tail_tol < 1e-3, "tail_tol must lie in (0, 1e-3)");
  require(c.node_ceiling >= 1000, "node_ceiling must be at least 1000");
  require(c.max_radius > 4.0, "max_radius must exceed 4");
  for (double t : {c.route_tol, c.identity_tol, c.ode_tol, c.diff_tol, c.real_tol, c.greens_tol, c.weak_field_tol,
                   c.operator_tol})
    require(t > 0.0 && t < 1.0, "pass/fail tolerances must lie in (0, 1)");
  require(c.z_radius > 0.0 && c.z_radius <= 20.0, "z_radius must lie in (0, 20]");
  require(c.z0_radius > 0.0 && c.z0_radius <= 20.0, "z0_radius must lie in (0, 20]");
  for (std::size_t n : {c.ode_points, c.route_points, c.identity_points, c.relation_per_sector, c.zero_shift_points,
                        c.diff_per_sector, c.real_points, c.greens_samples, c.operator_points, c.product_re_count,
                        c.product_im_count, c.greens_eta_count})
    require(n >= 1, "grid counts must be at least 1");
  require(c.product_re_min <= c.product_re_max && c.product_im_min <= c.product_im_max,
          "product table ranges must have min <= max");
  require(c.greens_eta_min > 0.0 && c.greens_eta_min <= c.greens_eta_max, "greens eta range must satisfy 0 < min <= max");
  require(c.greens_field > 0.0, "greens.field must be positive");
}

/// Reads `key = value` lines; '#' starts a comment.
inline void load_config(RunConfig& c, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = detail::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ConfigError, "config line " + std::to_string(lineno) + ": expected 'key = value'");
    apply_setting(c, detail::trim(body.substr(0, eq)), detail::trim(body.substr(eq + 1)));
  }
}

inline void load_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "config: cannot open '" + path + "'");
  load_config(c, in);
}

}  // namespace airyprod
