#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "airyprod/airy.hpp"
#include "airyprod/config.hpp"
#include "airyprod/contour.hpp"
#include "airyprod/format.hpp"
#include "airyprod/greens.hpp"
#include "airyprod/products.hpp"
#include "airyprod/sampling.hpp"

namespace airyprod {

struct CheckResult {
  std::string check;
  std::string point;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string name;
  std::vector<CheckResult> checks;

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass; }));
  }
  bool passed() const { return failures() == 0; }
  double worst_ratio() const {
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, c.pass ? c.residual / c.tolerance : std::numeric_limits<double>::infinity());
    return w;
  }
  void append(const SuiteReport& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

  Table table() const {
    Table t{{"suite", "check", "index", "point", "residual", "tolerance", "pass"}, {}};
    std::int64_t i = 0;
    for (const auto& c : checks) t.add({name, c.check, i++, c.point, c.residual, c.tolerance, c.pass});
    return t;
  }
};

namespace detail {

inline std::string point_of(const ShiftedArgs& a) {
  return "z=" + format_complex(a.z) + " z0=" + format_complex(a.z0) + " " + std::string(to_string(a.sector));
}

inline std::string rot_name(Rot r) {
  switch (r) {
    case Rot::Zero: return "0";
    case Rot::Plus: return "+";
    case Rot::Minus: return "-";
  }
  return "?";
}

/// Runs `residual()`, recording a failed check if it throws.
inline void record(SuiteReport& rep, std::string check, std::string point, double tolerance,
                   const std::function<double()>& residual) {
  CheckResult c{std::move(check), std::move(point), 0.0, tolerance, false};
  try {
    c.residual = residual();
    c.pass = c.residual <= tolerance;
  } catch (const Error& e) {
    c.residual = std::numeric_limits<double>::infinity();
    c.point += std::string(" error=") + std::string(to_string(e.kind()));
  }
  rep.checks.push_back(std::move(c));
}

/// |a - b| / max(1, |b|).
inline double route_gap(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

/// |lhs - rhs| relative to the largest magnitude entering the identity.
inline double identity_gap(cplx lhs, cplx rhs, double scale) {
  const double s = std::max({std::abs(lhs), std::abs(rhs), scale});
  return s > 0.0 ? std::abs(lhs - rhs) / s : std::abs(lhs - rhs);
}

inline constexpr Rot kRots[] = {Rot::Zero, Rot::Plus, Rot::Minus};

}  // namespace detail

/// Fourth-order ODE residual for all nine products, and the third-order
/// residual for z0 = 0.
inline SuiteReport ode_checks(const RunConfig& cfg) {
  SuiteReport rep{"ode", {}};
  for (const auto& a : sample_grid(cfg.ode_points, cfg.z_radius, cfg.z0_radius, cfg.seed)) {
    const auto pt = detail::point_of(a);
    for (Rot r1 : detail::kRots)
      for (Rot r2 : detail::kRots) {
        const auto tag = "(" + detail::rot_name(r1) + "," + detail::rot_name(r2) + ")";
        detail::record(rep, "shifted-ode" + tag, pt, cfg.ode_tol, [&] { return ode_residual(r1, r2, a); });
        if (a.sector == Sector::Zero)
          detail::record(rep, "product-ode" + tag, pt, cfg.ode_tol, [&] { return reduced_ode_residual(r1, r2, a.z); });
      }
  }
  return rep;
}

/// Contour route vs oracle route for U± and W± on the sample grid.
inline SuiteReport route_checks(const RunConfig& cfg) {
  SuiteReport rep{"routes", {}};
  const auto eng = cfg.engine();
  for (const auto& a : sample_grid(cfg.route_points, cfg.z_radius, cfg.z0_radius, cfg.seed + 1)) {
    const auto pt = detail::point_of(a);
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const std::string sg = s == Sign::Plus ? "+" : "-";
      detail::record(rep, "U" + sg, pt, cfg.route_tol,
                     [&] { return detail::route_gap(u_pm(s, a, Route::Contour, eng).value, u_pm(s, a).value); });
      detail::record(rep, "W" + sg, pt, cfg.route_tol,
                     [&] { return detail::route_gap(w_pm(s, a, Route::Contour, eng).value, w_pm(s, a).value); });
    }
  }
  return rep;
}

/// Half-line real-axis integrals vs the oracle: W± for x0 >= 0 and
/// Ai(x+x0)Ai(x) for x0 of either sign.
inline SuiteReport real_axis_checks(const RunConfig& cfg) {
  SuiteReport rep{"routes", {}};
  const auto eng = cfg.engine();
  Sampler smp(cfg.seed + 2);
  for (std::size_t i = 0; i < cfg.real_points; ++i) {
    const double x = smp.uniform(-5.0, 5.0);
    const double x0 = i % 2 == 0 ? smp.uniform(0.0, 4.0) : smp.uniform(-4.0, 0.0);
    const auto pt = "x=" + format_real(x) + " x0=" + format_real(x0);
    const auto a = ShiftedArgs::make(x, x0);
    detail::record(rep, "aiai-real", pt, cfg.real_tol, [&] {
      return std::abs(aiai_real(x, x0, eng).value - product(Rot::Zero, Rot::Zero, a).value);
    });
    if (x0 >= 0.0)
      for (Sign s : {Sign::Plus, Sign::Minus})
        detail::record(rep, s == Sign::Plus ? "w-real+" : "w-real-", pt, cfg.real_tol,
                       [&] { return std::abs(w_pm_real(s, x, x0, eng).value - w_pm(s, a).value); });
  }
  return rep;
}

/// Linear relations among the nine products with every term from the oracle.
inline SuiteReport identity_checks(const RunConfig& cfg) {
  SuiteReport rep{"identities", {}};
  const double third = std::numbers::pi / 3.0;
  for (const auto& a : sample_grid(cfg.identity_points, cfg.z_radius, cfg.z0_radius, cfg.seed + 3)) {
    const auto pt = detail::point_of(a);
    for (Rot r1 : detail::kRots)
      for (Rot r2 : detail::kRots) {
        if (r1 != Rot::Zero && r1 == r2) continue;
        if (r1 == Rot::Zero && r2 != Rot::Zero) continue;
        const auto tag = "combination(" + detail::rot_name(r1) + "," + detail::rot_name(r2) + ")";
        detail::record(rep, tag, pt, cfg.identity_tol, [&] {
          const auto lhs = product(r1, r2, a);
          const auto rhs = product_from_basis(r1, r2, a, Route::Direct);
          double scale = 0.0;
          for (Sign s : {Sign::Plus, Sign::Minus})
            scale = std::max({scale, std::abs(u_pm(s, a).value), std::abs(w_pm(s, a).value)});
          return detail::identity_gap(lhs.value, rhs.value, scale);
        });
      }
    const auto swapped = ShiftedArgs::make(a.z + a.z0, -a.z0);
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const std::string sg = s == Sign::Plus ? "+" : "-";
      const double sgn = s == Sign::Plus ? 1.0 : -1.0;
      detail::record(rep, "U" + sg + "-shift-symmetry", pt, cfg.identity_tol, [&] {
        return detail::identity_gap(u_pm(s, swapped).value, u_pm(s, a).value, 0.0);
      });
      detail::record(rep, "W" + sg + "-swap", pt, cfg.identity_tol, [&] {
        const cplx up = u_pm(s, a).value, um = u_pm(detail::flip(s), a).value;
        const cplx ws = w_pm(detail::flip(s), swapped).value;
        const cplx rhs = um + std::polar(1.0, -sgn * third) * (up - ws);
        return detail::identity_gap(w_pm(s, a).value, rhs, std::max({std::abs(up), std::abs(um), std::abs(ws)}));
      });
    }
  }
  return rep;
}

/// The rotated-difference identities from I_O, with the sector-dependent sign.
inline SuiteReport difference_checks(const RunConfig& cfg) {
  SuiteReport rep{"identities", {}};
  const auto eng = cfg.engine();
  for (Sector sec : kAllSectors)
    for (const auto& a : sample_sector(sec, cfg.diff_per_sector, cfg.z_radius, cfg.z0_radius, cfg.seed + 4)) {
      const auto pt = detail::point_of(a);
      for (Sign s : {Sign::Plus, Sign::Minus})
        detail::record(rep, s == Sign::Plus ? "diff+" : "diff-", pt, cfg.diff_tol, [&] {
          return detail::route_gap(difference_identity(s, a, Route::Contour, eng).value,
                                   difference_identity(s, a, Route::Direct).value);
        });
    }
  return rep;
}

/// I_O = I_{R-} + I_{L-} - I_{L+} - I_{R+} per sector, and I_O(z; 0) = 0.
inline SuiteReport relation_checks(const RunConfig& cfg) {
  SuiteReport rep{"contour-relation", {}};
  const auto eng = cfg.engine();
  for (Sector sec : kAllSectors)
    for (const auto& a : sample_sector(sec, cfg.relation_per_sector, cfg.z_radius, cfg.z0_radius, cfg.seed + 5)) {
      CheckResult c{"five-contour-relation", detail::point_of(a), 0.0, 0.0, false};
      try {
        cplx val[5];
        double combined = 0.0;
        for (int k = 0; k < 5; ++k) {
          const auto q = laplace_integral(build_contour(static_cast<ContourKind>(k), a, eng), a, eng.tol);
          val[k] = q.value;
          combined += eng.tol * std::max(1.0, std::abs(q.value));
        }
        using K = ContourKind;
        auto at = [&](K k) { return val[static_cast<int>(k)]; };
        c.residual = std::abs(at(K::O) - (at(K::RMinus) + at(K::LMinus) - at(K::LPlus) - at(K::RPlus)));
        c.tolerance = combined;
        c.pass = c.residual <= combined;
      } catch (const Error& e) {
        c.residual = std::numeric_limits<double>::infinity();
        c.point += std::string(" error=") + std::string(to_string(e.kind()));
      }
      rep.checks.push_back(std::move(c));
    }
  Sampler smp(cfg.seed + 6);
  for (std::size_t i = 0; i < cfg.zero_shift_points; ++i) {
    const auto a = ShiftedArgs::make(smp.disk(cfg.z_radius), 0.0);
    detail::record(rep, "loop-vanishes-at-zero-shift", detail::point_of(a), eng.tol, [&] {
      return std::abs(laplace_integral(build_contour(ContourKind::O, a, eng), a, eng.tol).value);
    });
  }
  return rep;
}

namespace detail {

inline Vec3 unit_vector(Sampler& s) {
  const double cz = s.uniform(-1.0, 1.0);
  const double phi = s.uniform(0.0, 2.0 * std::numbers::pi);
  const double sz = std::sqrt(1.0 - cz * cz);
  return {sz * std::cos(phi), sz * std::sin(phi), cz};
}

inline Vec3 scale(const Vec3& v, double a) { return {a * v[0], a * v[1], a * v[2]}; }

inline std::string point_of(const GreensParams& p) {
  auto v = [](const Vec3& x) { return format_real(x[0]) + ";" + format_real(x[1]) + ";" + format_real(x[2]); };
  return "E=" + format_real(p.energy) + " F=" + v(p.field) + " r=" + v(p.r) + " r'=" + v(p.r_prime);
}

}  // namespace detail

/// Closed form vs time integral, weak-field limit and the Schrödinger operator
/// residual.
inline SuiteReport greens_checks(const RunConfig& cfg) {
  SuiteReport rep{"greens", {}};
  Sampler smp(cfg.seed + 7);
  for (std::size_t i = 0; i < cfg.greens_samples; ++i) {
    const double e = smp.uniform(-1.0, 1.0);
    const double f = smp.uniform(0.01, 1.0);
    const double eta = smp.uniform(0.1, 5.0);
    const double rho = eta * std::cbrt(4.0) / std::cbrt(f);
    const Vec3 rp{smp.uniform(-1.0, 1.0), smp.uniform(-1.0, 1.0), smp.uniform(-1.0, 1.0)};
    const GreensParams p{e, detail::scale(detail::unit_vector(smp), f), rp + detail::scale(detail::unit_vector(smp), rho),
                         rp};
    detail::record(rep, "closed-vs-time-integral", detail::point_of(p), cfg.greens_tol, [&] {
      const cplx c = greens_closed(p);
      return std::abs(c - greens_time_integral(p, std::max(1e-10, cfg.tol))) / std::abs(c);
    });
  }
  for (std::size_t i = 0; i < 10; ++i) {
    const Vec3 rp{smp.uniform(-1.0, 1.0), smp.uniform(-1.0, 1.0), smp.uniform(-1.0, 1.0)};
    const GreensParams p{0.5, {0.0, 0.0, 1e-4}, rp + detail::scale(detail::unit_vector(smp), smp.uniform(0.5, 3.0)), rp};
    detail::record(rep, "weak-field-limit", detail::point_of(p), cfg.weak_field_tol, [&] {
      const cplx free = greens_free(p);
      return std::abs(greens_closed(p) - free) / std::abs(free);
    });
  }
  for (std::size_t i = 0; i < cfg.operator_points; ++i) {
    const double e = smp.uniform(-0.5, 1.0);
    const double f = smp.uniform(0.05, 0.5);
    const Vec3 rp{smp.uniform(-1.0, 1.0), smp.uniform(-1.0, 1.0), smp.uniform(-1.0, 1.0)};
    const GreensParams p{e, detail::scale(detail::unit_vector(smp), f),
                         rp + detail::scale(detail::unit_vector(smp), smp.uniform(1.5, 4.0)), rp};
    detail::record(rep, "operator-residual", detail::point_of(p), cfg.operator_tol,
                   [&] { return greens_operator_residual(p); });
  }
  return rep;
}

/// Connection identity, values at the origin, Schwarz reflection.
inline SuiteReport oracle_checks(const RunConfig& cfg) {
  SuiteReport rep{"oracle", {}};
  Sampler smp(cfg.seed + 8);
  for (int i = 0; i < 200; ++i) {
    const cplx z = smp.disk(10.0);
    const auto pt = "z=" + format_complex(z);
    detail::record(rep, "connection-identity", pt, 1e-11, [&] {
      const cplx a = airy(z).ai;
      // Ai(z) = e^{-iπ/3} Ai(e^{2iπ/3} z) + e^{iπ/3} Ai(e^{-2iπ/3} z)
      const cplx p = std::polar(1.0, -std::numbers::pi / 3.0) * rotated_airy(1, z).ai;
      const cplx m = std::polar(1.0, std::numbers::pi / 3.0) * rotated_airy(-1, z).ai;
      return std::abs(p + m - a) / std::max({std::abs(a), std::abs(p), std::abs(m)});
    });
    detail::record(rep, "schwarz-reflection", pt, 1e-13, [&] {
      const auto v = airy(z), w = airy(std::conj(z));
      return std::abs(w.ai - std::conj(v.ai)) / std::max(std::abs(v.ai), 1e-300);
    });
  }
  detail::record(rep, "ai-at-zero", "z=0", 1e-14, [] { return std::abs(airy(0.0).ai - kAiAtZero); });
  detail::record(rep, "ai-prime-at-zero", "z=0", 1e-14, [] { return std::abs(airy(0.0).ai_prime - kAiPrimeAtZero); });
  return rep;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"ode", "routes", "identities", "contour-relation", "greens", "oracle"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
  if (name == "ode") return ode_checks(cfg);
  if (name == "routes") {
    auto r = route_checks(cfg);
    r.append(real_axis_checks(cfg));
    return r;
  }
  if (name == "identities") {
    auto r = identity_checks(cfg);
    r.append(difference_checks(cfg));
    return r;
  }
  if (name == "contour-relation") return relation_checks(cfg);
  if (name == "greens") return greens_checks(cfg);
  if (name == "oracle") return oracle_checks(cfg);
  throw Error(ErrorKind::InvalidArgument, "verify: unknown suite '" + name + "'");
}

}  // namespace airyprod
