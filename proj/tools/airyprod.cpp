// Command-line front end: eval | verify | table.
//
// Exit codes: 0 success, 1 verification failures, 2 domain or usage errors,
// 3 quadrature failures, 4 I/O errors. Data goes to stdout, diagnostics to stderr.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

#include "airyprod/airyprod.hpp"

namespace {

using namespace airyprod;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitDomain = 2;
constexpr int kExitQuadrature = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Route parse_route(const std::string& s) {
  if (s == "direct") return Route::Direct;
  if (s == "contour") return Route::Contour;
  if (s == "real-axis" || s == "real") return Route::RealAxis;
  throw Error(ErrorKind::InvalidArgument, "route must be direct, contour or real-axis, got '" + s + "'");
}

Rot parse_rot(const std::string& s) {
  if (s == "0") return Rot::Zero;
  if (s == "+") return Rot::Plus;
  if (s == "-") return Rot::Minus;
  throw Error(ErrorKind::InvalidArgument, "rotation must be 0, + or -, got '" + s + "'");
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

void emit(const Table& t, Format f, const std::string& path) {
  if (path == "-") {
    write_table(std::cout, t, f);
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_table(out, t, f);
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

struct EvalRequest {
  std::string function;
  std::string z = "0";
  std::string z0 = "0";
  double x = 0.0;
  double x0 = 0.0;
  std::optional<std::string> route;
};

Table evaluate(const EvalRequest& req, const RunConfig& cfg) {
  const auto eng = cfg.engine();
  const std::string& fn = req.function;
  auto route_or = [&](Route fallback) { return req.route ? parse_route(*req.route) : fallback; };

  cplx z, z0;
  ProductValue pv;
  const bool real_fn = fn == "aiai-real" || fn == "w-real+" || fn == "w-real-";
  if (real_fn) {
    z = req.x;
    z0 = req.x0;
    const Route route = route_or(Route::RealAxis);
    const auto args = ShiftedArgs::make(z, z0);
    if (fn == "aiai-real") {
      if (route == Route::RealAxis) pv = aiai_real(req.x, req.x0, eng);
      else pv = product(Rot::Zero, Rot::Zero, args, route, eng);
    } else {
      const Sign s = fn.back() == '+' ? Sign::Plus : Sign::Minus;
      if (route == Route::RealAxis) pv = w_pm_real(s, req.x, req.x0, eng);
      else {
        if (req.x0 < 0.0) throw Error(ErrorKind::NegativeShift, "w-real requires x0 >= 0");
        pv = w_pm(s, args, route, eng);
      }
    }
  } else {
    z = parse_complex(req.z);
    z0 = parse_complex(req.z0);
    const auto args = ShiftedArgs::make(z, z0);
    static const std::regex product_re(R"(product\(([0+-]),([0+-])\))");
    std::smatch m;
    if (fn == "u+" || fn == "u-") {
      pv = u_pm(fn.back() == '+' ? Sign::Plus : Sign::Minus, args, route_or(Route::Direct), eng);
    } else if (fn == "w+" || fn == "w-") {
      pv = w_pm(fn.back() == '+' ? Sign::Plus : Sign::Minus, args, route_or(Route::Direct), eng);
    } else if (fn == "diff+" || fn == "diff-") {
      pv = difference_identity(fn.back() == '+' ? Sign::Plus : Sign::Minus, args, route_or(Route::Contour), eng);
    } else if (std::regex_match(fn, m, product_re)) {
      pv = product(parse_rot(m[1]), parse_rot(m[2]), args, route_or(Route::Direct), eng);
    } else {
      throw Error(ErrorKind::InvalidArgument,
                  "unknown function '" + fn + "'; expected u+, u-, w+, w-, product(r1,r2), diff+, diff-, aiai-real, w-real+, w-real-");
    }
  }
  Table t{{"function", "z_re", "z_im", "z0_re", "z0_im", "value_re", "value_im", "abs_err_est", "route", "sector"}, {}};
  t.add({fn, z.real(), z.imag(), z0.real(), z0.imag(), pv.value.real(), pv.value.imag(), pv.abs_err_est,
         std::string(to_string(pv.route)), std::string(to_string(classify_sector(z0)))});
  return t;
}

struct TableRequest {
  std::string target;
  std::string output = "-";
  std::string rot1 = "0";
  std::string rot2 = "0";
  std::string route = "direct";
};

Table product_table(const TableRequest& req, const RunConfig& cfg) {
  const Rot r1 = parse_rot(req.rot1), r2 = parse_rot(req.rot2);
  const Route route = parse_route(req.route);
  if (route == Route::RealAxis) throw Error(ErrorKind::InvalidArgument, "product table supports direct or contour routes");
  const auto eng = cfg.engine();
  Table t{{"z_re", "z_im", "z0_re", "z0_im", "value_re", "value_im", "abs_err_est"}, {}};
  for (double im : linspace(cfg.product_im_min, cfg.product_im_max, cfg.product_im_count))
    for (double re : linspace(cfg.product_re_min, cfg.product_re_max, cfg.product_re_count)) {
      const auto args = ShiftedArgs::make({re, im}, cfg.product_z0);
      const auto pv = product(r1, r2, args, route, eng);
      t.add({re, im, cfg.product_z0.real(), cfg.product_z0.imag(), pv.value.real(), pv.value.imag(), pv.abs_err_est});
    }
  return t;
}

// Field along z, r' at the origin and r on the x axis, so that F·(r+r') = 0
// and the energy alone sets xi.
Table greens_table(const RunConfig& cfg) {
  const double f = cfg.greens_field;
  const double energy = -0.5 * cfg.greens_xi * std::cbrt(4.0 * f * f);
  Table t{{"eta", "xi", "energy", "field", "distance", "value_re", "value_im", "abs_err_est"}, {}};
  for (double eta : linspace(cfg.greens_eta_min, cfg.greens_eta_max, cfg.greens_eta_count)) {
    const double rho = eta * std::cbrt(4.0) / std::cbrt(f);
    const GreensParams p{energy, {0.0, 0.0, f}, {rho, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    const cplx g = greens_closed(p);
    const double err = std::abs(g - greens_time_integral(p, std::max(1e-10, cfg.tol)));
    t.add({eta, cfg.greens_xi, energy, f, rho, g.real(), g.imag(), err});
  }
  return t;
}

int exit_code_for(const Error& e) { return e.is_quadrature_failure() ? kExitQuadrature : kExitDomain; }

int run(int argc, char** argv) {
  CLI::App app{"Shifted Airy products, their contour-integral representations, and the static-field Green's function"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::optional<double> tol;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--tol", tol, "quadrature tolerance");
  app.add_option("--format", format, "output format: csv or json");
  app.add_option("--seed", seed, "seed for sampled verification grids");

  EvalRequest ev;
  auto* eval = app.add_subcommand("eval", "evaluate one function at one point");
  eval->add_option("function", ev.function,
                   "u+, u-, w+, w-, product(r1,r2), diff+, diff-, aiai-real, w-real+, w-real-")
      ->required();
  eval->add_option("--z", ev.z, "complex z as RE+IMi");
  eval->add_option("--z0", ev.z0, "complex z0 as RE+IMi");
  eval->add_option("--x", ev.x, "real x for the real-axis functions");
  eval->add_option("--x0", ev.x0, "real x0 for the real-axis functions");
  eval->add_option("--route", ev.route, "direct, contour or real-axis");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "ode, routes, identities, contour-relation, greens, oracle")->required();

  TableRequest tr;
  auto* table = app.add_subcommand("table", "tabulate a function over the configured grid");
  table->add_option("target", tr.target, "product or greens")->required();
  table->add_option("-o,--output", tr.output, "output path, '-' for stdout");
  table->add_option("--rot1", tr.rot1, "rotation of the shifted factor: 0, + or -");
  table->add_option("--rot2", tr.rot2, "rotation of the unshifted factor: 0, + or -");
  table->add_option("--route", tr.route, "direct or contour");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "airyprod: " << e.what() << "\n";
    return kExitDomain;
  }

  try {
    RunConfig cfg;
    if (config_path) load_config_file(cfg, *config_path);
    if (tol) cfg.tol = *tol;
    if (format) cfg.format = parse_format(*format);
    if (seed) cfg.seed = *seed;
    validate(cfg);

    if (*eval) {
      emit(evaluate(ev, cfg), cfg.format, "-");
      return 0;
    }
    if (*verify) {
      const auto report = run_suite(suite, cfg);
      emit(report.table(), cfg.format, "-");
      std::cerr << "verify " << suite << ": " << report.checks.size() - report.failures() << "/" << report.checks.size()
                << " checks passed\n";
      return report.passed() ? 0 : kExitVerifyFailed;
    }
    if (*table) {
      if (tr.target == "product") emit(product_table(tr, cfg), cfg.format, tr.output);
      else if (tr.target == "greens") emit(greens_table(cfg), cfg.format, tr.output);
      else throw Error(ErrorKind::InvalidArgument, "table target must be product or greens, got '" + tr.target + "'");
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "airyprod: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const IoError& e) {
    std::cerr << "airyprod: io: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitDomain;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
