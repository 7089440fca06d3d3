#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "airyprod/airy.hpp"
#include "airyprod/contour.hpp"
#include "airyprod/error.hpp"

namespace airyprod {

enum class Route { Direct, Contour, RealAxis };
enum class Sign { Plus = 1, Minus = -1 };
/// Rotation of an Airy argument: Ai(x), Ai(e^{2iπ/3} x) or Ai(e^{-2iπ/3} x).
enum class Rot { Zero = 0, Plus = 1, Minus = -1 };

constexpr std::string_view to_string(Route r) {
  switch (r) {
    case Route::Direct: return "direct";
    case Route::Contour: return "contour";
    case Route::RealAxis: return "real-axis";
  }
  return "?";
}

struct ProductValue {
  cplx value;
  Route route = Route::Direct;
  double abs_err_est = 0.0;
};

namespace detail {

constexpr double sgn(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }
constexpr Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
constexpr Rot rot_of(Sign s) { return s == Sign::Plus ? Rot::Plus : Rot::Minus; }

inline cplx unit(double phase) { return std::polar(1.0, phase); }

/// e^{i phase} / (4 π^{3/2}).
inline cplx prefactor(double phase) { return unit(phase) / (4.0 * std::pow(std::numbers::pi, 1.5)); }

struct Factor {
  cplx value;
  double abs_err;
};

inline Factor airy_factor(Rot rot, cplx x) {
  const auto v = rotated_airy(static_cast<int>(rot), x);
  return {v.ai, v.est_rel_err * modulus_scale(x, v.ai, v.ai_prime)};
}

inline ProductValue direct_product(Rot r1, Rot r2, const ShiftedArgs& args) {
  const auto u = airy_factor(r1, args.z + args.z0);
  const auto v = airy_factor(r2, args.z);
  return {u.value * v.value, Route::Direct, u.abs_err * std::abs(v.value) + std::abs(u.value) * v.abs_err};
}

inline QuadResult contour_integral(ContourKind kind, const ShiftedArgs& args, const EngineConfig& config) {
  auto q = laplace_integral(build_contour(kind, args, config), args, config.tol);
  if (!q.converged)
    throw Error(ErrorKind::ToleranceNotMet, std::string("contour integral over ") + std::string(to_string(kind)) +
                                                " did not reach the requested tolerance");
  return q;
}

inline ProductValue scaled(cplx factor, const QuadResult& q) {
  return {factor * q.value, Route::Contour, std::abs(factor) * q.abs_err_est};
}

inline ProductValue combine(cplx ca, const ProductValue& a, cplx cb, const ProductValue& b) {
  return {ca * a.value + cb * b.value, a.route, std::abs(ca) * a.abs_err_est + std::abs(cb) * b.abs_err_est};
}

}  // namespace detail

/// U±(z; z0) = Ai(e^{±2iπ/3}(z+z0)) Ai(e^{±2iπ/3} z). The contour route is
/// e^{iπ/4 ∓ iπ/3} / (4π^{3/2}) times the integral over L±.
inline ProductValue u_pm(Sign s, const ShiftedArgs& args, Route route = Route::Direct, const EngineConfig& config = {}) {
  const Rot r = detail::rot_of(s);
  if (route == Route::Direct) return detail::direct_product(r, r, args);
  if (route != Route::Contour) throw Error(ErrorKind::InvalidArgument, "u_pm: no real-axis route");
  const auto kind = s == Sign::Plus ? ContourKind::LPlus : ContourKind::LMinus;
  const double phase = std::numbers::pi / 4.0 - detail::sgn(s) * std::numbers::pi / 3.0;
  return detail::scaled(detail::prefactor(phase), detail::contour_integral(kind, args, config));
}

/// W±(z; z0) = Ai(z+z0) Ai(e^{±2iπ/3} z). The contour route uses the R±
/// integral alone for |arg z0| <= π/2 (including z0 = 0) and adds ±I_O, with
/// contours oriented by -z0, for |arg z0| > π/2.
inline ProductValue w_pm(Sign s, const ShiftedArgs& args, Route route = Route::Direct, const EngineConfig& config = {}) {
  const Rot r = detail::rot_of(s);
  if (route == Route::Direct) return detail::direct_product(Rot::Zero, r, args);
  if (route != Route::Contour) throw Error(ErrorKind::InvalidArgument, "w_pm: use w_pm_real for the real-axis route");
  const auto kind = s == Sign::Plus ? ContourKind::RPlus : ContourKind::RMinus;
  const cplx pref = detail::prefactor(std::numbers::pi / 4.0 + detail::sgn(s) * std::numbers::pi / 3.0);
  switch (args.sector) {
    case Sector::Zero:
    case Sector::Inner:
    case Sector::Boundary: return detail::scaled(pref, detail::contour_integral(kind, args, config));
    case Sector::Outer: {
      const auto ir = detail::contour_integral(kind, args, config);
      const auto io = detail::contour_integral(ContourKind::O, args, config);
      return {pref * (ir.value + detail::sgn(s) * io.value), Route::Contour,
              std::abs(pref) * (ir.abs_err_est + io.abs_err_est)};
    }
  }
  throw Error(ErrorKind::SectorDispatchError, "w_pm: unclassified sector of arg z0");
}

/// v1(z+z0) v2(z) assembled from the basis U±, W± evaluated by `route`:
/// the basis itself for (±,±) and (0,±), and
///   (0,0) = e^{-iπ/3} W+ + e^{iπ/3} W-,
///   (±,0) = U∓ + e^{∓iπ/3} [U± - W∓],
///   (±,∓) = e^{∓iπ/3} U∓ + e^{±iπ/3} W∓.
inline ProductValue product_from_basis(Rot rot1, Rot rot2, const ShiftedArgs& args, Route route,
                                       const EngineConfig& config = {}) {
  constexpr double third = std::numbers::pi / 3.0;
  using detail::unit;
  if (rot1 == rot2 && rot1 != Rot::Zero) return u_pm(rot1 == Rot::Plus ? Sign::Plus : Sign::Minus, args, route, config);
  if (rot1 == Rot::Zero && rot2 != Rot::Zero)
    return w_pm(rot2 == Rot::Plus ? Sign::Plus : Sign::Minus, args, route, config);
  if (rot1 == Rot::Zero)
    return detail::combine(unit(-third), w_pm(Sign::Plus, args, route, config), unit(third),
                           w_pm(Sign::Minus, args, route, config));
  const Sign s = rot1 == Rot::Plus ? Sign::Plus : Sign::Minus;
  const double sg = detail::sgn(s);
  if (rot2 == Rot::Zero) {
    const auto inner = detail::combine(1.0, u_pm(s, args, route, config), -1.0,
                                       w_pm(detail::flip(s), args, route, config));
    return detail::combine(1.0, u_pm(detail::flip(s), args, route, config), unit(-sg * third), inner);
  }
  return detail::combine(unit(-sg * third), u_pm(detail::flip(s), args, route, config), unit(sg * third),
                         w_pm(detail::flip(s), args, route, config));
}

/// v1(z+z0) v2(z) with v1 = Ai(e^{2iπ rot1/3} ·) and v2 = Ai(e^{2iπ rot2/3} ·).
/// Direct multiplies two oracle values; Contour goes through the basis integrals.
inline ProductValue product(Rot rot1, Rot rot2, const ShiftedArgs& args, Route route = Route::Direct,
                            const EngineConfig& config = {}) {
  if (route == Route::Direct) return detail::direct_product(rot1, rot2, args);
  if (route != Route::Contour) throw Error(ErrorKind::InvalidArgument, "product: real-axis route is aiai_real/w_pm_real");
  return product_from_basis(rot1, rot2, args, route, config);
}

/// Ai(e^{±2iπ/3}(z+z0)) Ai(z) - Ai(z+z0) Ai(e^{±2iπ/3} z). The contour route is
/// ±e^{iπ/4±iπ/3}/(4π^{3/2}) I_O for |arg z0| <= π/2, with the sign reversed
/// for |arg z0| > π/2.
inline ProductValue difference_identity(Sign s, const ShiftedArgs& args, Route route = Route::Contour,
                                        const EngineConfig& config = {}) {
  const Rot r = detail::rot_of(s);
  if (route == Route::Direct) {
    const auto a = detail::direct_product(r, Rot::Zero, args);
    const auto b = detail::direct_product(Rot::Zero, r, args);
    return {a.value - b.value, Route::Direct, a.abs_err_est + b.abs_err_est};
  }
  if (route != Route::Contour) throw Error(ErrorKind::InvalidArgument, "difference_identity: no real-axis route");
  if (args.sector == Sector::Zero) return {cplx{}, Route::Contour, 0.0};
  double sign = detail::sgn(s);
  if (args.sector == Sector::Outer) sign = -sign;
  const cplx pref = detail::prefactor(std::numbers::pi / 4.0 + detail::sgn(s) * std::numbers::pi / 3.0);
  return detail::scaled(sign * pref, detail::contour_integral(ContourKind::O, args, config));
}

namespace detail {

/// J = ∫_0^∞ exp[i(κa - b/κ + κ^3/12)] κ^{-1/2} dκ along arg κ = π/6, where
/// e^{-ib/κ} and e^{iκ^3/12} both decay for real b >= 0.
inline QuadResult real_ray_integral(double x, double x0, const EngineConfig& config) {
  constexpr double angle = std::numbers::pi / 6.0;
  const auto args = ShiftedArgs::make(x, x0);
  const auto f = LaplaceIntegrand::of(args);
  const double radius = truncation_radius(f, config.tail_tol, config.max_radius);
  auto legs_for = [&](double rho) {
    return std::vector<Leg>{Leg::origin(angle, rho, origin_extent(f, angle, rho, config.tail_tol), true),
                            Leg::ray(angle, rho, radius)};
  };
  double best_rho = 1.0, best_peak = std::numeric_limits<double>::infinity();
  for (double rho = 0.05; rho < radius / 1.5 && rho <= 8.0; rho *= 1.25) {
    const double peak = peak_log(legs_for(rho), f);
    if (peak < best_peak) {
      best_peak = peak;
      best_rho = rho;
    }
  }
  const auto legs = legs_for(best_rho);
  auto q = integrate_path(std::span<const Leg>(legs), f, config.tol, config.tol, config.node_ceiling);
  if (!q.converged || !std::isfinite(std::abs(q.value)))
    throw Error(ErrorKind::ToleranceNotMet, "real-axis integral did not reach the requested tolerance");
  return q;
}

}  // namespace detail

/// W±(x; x0) for real x and x0 >= 0 from a single half-line integral.
inline ProductValue w_pm_real(Sign s, double x, double x0, const EngineConfig& config = {}) {
  if (!std::isfinite(x) || !std::isfinite(x0)) throw Error(ErrorKind::NonFinite, "w_pm_real: argument is not finite");
  if (x0 < 0.0) throw Error(ErrorKind::NegativeShift, "w_pm_real: requires x0 >= 0");
  const auto q = detail::real_ray_integral(x, x0, config);
  const cplx j = s == Sign::Plus ? std::conj(q.value) : q.value;
  const cplx pref = detail::prefactor(detail::sgn(s) * std::numbers::pi / 12.0);
  return {pref * j, Route::RealAxis, std::abs(pref) * q.abs_err_est};
}

/// Ai(x+x0) Ai(x) for any real x, x0 as the real part of the half-line integral.
inline ProductValue aiai_real(double x, double x0, const EngineConfig& config = {}) {
  if (!std::isfinite(x) || !std::isfinite(x0)) throw Error(ErrorKind::NonFinite, "aiai_real: argument is not finite");
  const auto q = detail::real_ray_integral(x, x0, config);
  const double scale = 1.0 / (2.0 * std::pow(std::numbers::pi, 1.5));
  return {std::real(detail::unit(std::numbers::pi / 4.0) * q.value) * scale, Route::RealAxis, scale * q.abs_err_est};
}

namespace detail {

/// Derivatives 0..4 of a solution of y'' = x y from (y, y').
inline std::array<cplx, 5> airy_jet(cplx x, cplx y, cplx dy) {
  return {y, dy, x * y, y + x * dy, 2.0 * dy + x * x * y};
}

inline std::array<cplx, 5> product_jet(Rot rot1, Rot rot2, const ShiftedArgs& args) {
  const cplx p = args.z + args.z0;
  const auto a = rotated_airy(static_cast<int>(rot1), p);
  const auto b = rotated_airy(static_cast<int>(rot2), args.z);
  const auto u = airy_jet(p, a.ai, a.ai_prime);
  const auto v = airy_jet(args.z, b.ai, b.ai_prime);
  constexpr std::array<std::array<double, 5>, 5> binom = {{{1, 0, 0, 0, 0},
                                                           {1, 1, 0, 0, 0},
                                                           {1, 2, 1, 0, 0},
                                                           {1, 3, 3, 1, 0},
                                                           {1, 4, 6, 4, 1}}};
  std::array<cplx, 5> w{};
  for (int n = 0; n < 5; ++n)
    for (int j = 0; j <= n; ++j) w[n] += binom[n][j] * u[j] * v[n - j];
  return w;
}

}  // namespace detail

/// Residual of w'''' - (4z+2z0) w'' - 6 w' + z0^2 w for w = v1(z+z0) v2(z),
/// normalised by the sum of the term magnitudes. Derivatives are exact
/// polynomial combinations of Ai and Ai'.
inline double ode_residual(Rot rot1, Rot rot2, const ShiftedArgs& args) {
  const auto w = detail::product_jet(rot1, rot2, args);
  const cplx c2 = 4.0 * args.z + 2.0 * args.z0;
  const cplx c0 = args.z0 * args.z0;
  const cplx terms[] = {w[4], -c2 * w[2], -6.0 * w[1], c0 * w[0]};
  cplx sum{};
  double scale = 0.0;
  for (auto t : terms) {
    sum += t;
    scale += std::abs(t);
  }
  return scale > 0.0 ? std::abs(sum) / scale : 0.0;
}

/// Same residual for w = Ai(z+z0) Ai(z).
inline double ode_residual_w(const ShiftedArgs& args) { return ode_residual(Rot::Zero, Rot::Zero, args); }

/// Residual of w''' - 4z w' - 2w for w = v1(z) v2(z), normalised as above.
inline double reduced_ode_residual(Rot rot1, Rot rot2, cplx z) {
  const auto w = detail::product_jet(rot1, rot2, ShiftedArgs::make(z, 0.0));
  const cplx terms[] = {w[3], -4.0 * z * w[1], -2.0 * w[0]};
  cplx sum{};
  double scale = 0.0;
  for (auto t : terms) {
    sum += t;
    scale += std::abs(t);
  }
  return scale > 0.0 ? std::abs(sum) / scale : 0.0;
}

}  // namespace airyprod
