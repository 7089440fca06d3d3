#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "airyprod/error.hpp"
#include "airyprod/path.hpp"

namespace airyprod {

using cplx = std::complex<double>;

enum class Sector { Zero, Inner, Boundary, Outer };

constexpr std::string_view to_string(Sector s) {
  switch (s) {
    case Sector::Zero: return "zero";
    case Sector::Inner: return "inner";
    case Sector::Boundary: return "boundary";
    case Sector::Outer: return "outer";
  }
  return "?";
}

inline constexpr double kBoundaryTolerance = 1e-12;
inline constexpr double kZeroShift = 1e-300;

inline Sector classify_sector(cplx z0) {
  if (!std::isfinite(z0.real()) || !std::isfinite(z0.imag()))
    throw Error(ErrorKind::NonFinite, "classify_sector: z0 is not finite");
  if (std::abs(z0) < kZeroShift) return Sector::Zero;
  const double excess = std::abs(std::arg(z0)) - std::numbers::pi / 2.0;
  if (std::abs(excess) <= kBoundaryTolerance) return Sector::Boundary;
  return excess < 0.0 ? Sector::Inner : Sector::Outer;
}

/// The pair (z, z0) with the sector of arg z0.
struct ShiftedArgs {
  cplx z;
  cplx z0;
  Sector sector = Sector::Zero;

  static ShiftedArgs make(cplx z, cplx z0) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorKind::NonFinite, "ShiftedArgs: z is not finite");
    return {z, z0, classify_sector(z0)};
  }

  /// Angle that orients the internal valleys: arg z0, or arg(-z0) when Outer.
  double orientation() const {
    switch (sector) {
      case Sector::Zero: return 0.0;
      case Sector::Outer: return std::arg(-z0);
      default: return std::arg(z0);
    }
  }
};

enum class ContourKind { LPlus, LMinus, RPlus, RMinus, O };

constexpr std::string_view to_string(ContourKind k) {
  switch (k) {
    case ContourKind::LPlus: return "L+";
    case ContourKind::LMinus: return "L-";
    case ContourKind::RPlus: return "R+";
    case ContourKind::RMinus: return "R-";
    case ContourKind::O: return "O";
  }
  return "?";
}

struct EngineConfig {
  double tol = 1e-10;
  double tail_tol = 1e-16;
  std::size_t node_ceiling = 400000;
  double max_radius = 60.0;
  bool saddle_hint = true;
};

struct ContourPath {
  ContourKind kind = ContourKind::O;
  double cut_angle = 0.0;
  std::vector<Leg> legs;
  double truncation_radius = 0.0;
  double endpoint_scale = 0.0;
  std::size_t node_ceiling = 400000;
};

// Valley directions of e^{ik^3/12} as continuous arguments of k.
inline constexpr double kValleyRight = std::numbers::pi / 6.0;
inline constexpr double kValleyDown = -std::numbers::pi / 2.0;
inline constexpr double kValleyLeft = -7.0 * std::numbers::pi / 6.0;

struct SaddleHint {
  cplx k;
  double arg;
};

/// Leading-order location of the saddle point that dominates the L± or R±
/// integral for large |z|; none for O, for |z| < 1, or for R± with z0 = 0.
inline std::optional<SaddleHint> saddle_hint(ContourKind kind, const ShiftedArgs& args) {
  constexpr double pi = std::numbers::pi;
  const double mod_z = std::abs(args.z);
  if (mod_z < 1.0) return std::nullopt;
  double modulus = 0.0, arg = 0.0;
  switch (kind) {
    case ContourKind::LPlus:
    case ContourKind::LMinus:
      modulus = 2.0 * std::sqrt(mod_z);
      arg = -pi / 2.0 + (kind == ContourKind::LPlus ? -pi / 3.0 : pi / 3.0);
      break;
    case ContourKind::RPlus:
    case ContourKind::RMinus:
      if (args.sector == Sector::Zero) return std::nullopt;
      modulus = 0.5 * std::abs(args.z0) / std::sqrt(mod_z);
      arg = args.orientation() + (kind == ContourKind::RPlus ? -1.5 * pi : 0.5 * pi);
      break;
    case ContourKind::O: return std::nullopt;
  }
  return SaddleHint{std::polar(modulus, arg), arg};
}

/// exp(i a k - i b/k + i k^3/12) k^{-1/2}, a = z + z0/2, b = z0^2/4, with the
/// square root taken from the tracked argument of k.
struct LaplaceIntegrand {
  cplx a;
  cplx b;

  static LaplaceIntegrand of(const ShiftedArgs& args) { return {args.z + 0.5 * args.z0, 0.25 * args.z0 * args.z0}; }

  cplx log_value(cplx k, double arg) const {
    const cplx i{0.0, 1.0};
    const cplx k3 = k * k * k;
    cplx e = i * a * k + i * k3 / 12.0 - 0.5 * cplx(std::log(std::abs(k)), arg);
    if (b != cplx{}) e -= i * b / k;
    return e;
  }
  cplx operator()(cplx k, double arg) const { return std::exp(log_value(k, arg)); }
};

namespace detail {

inline double start_right(double beta) {
  return 2.0 * beta + std::max(std::numbers::pi / 4.0 - beta / 2.0, std::numbers::pi / 8.0);
}
inline double start_left(double beta) {
  return 2.0 * beta - 2.0 * std::numbers::pi + std::min(0.75 * std::numbers::pi - beta / 2.0, 0.875 * std::numbers::pi);
}

/// Smallest R with R^3/12 >= L + |a| R + |b|/R.
inline double truncation_radius(const LaplaceIntegrand& f, double tail_tol, double max_radius) {
  const double big_l = -std::log(tail_tol);
  const double ma = std::abs(f.a), mb = std::abs(f.b);
  auto margin = [&](double r) { return r * r * r / 12.0 - big_l - ma * r - mb / r; };
  double hi = std::max(4.0, 2.0 * std::cbrt(12.0 * big_l));
  while (margin(hi) < 0.0) {
    hi *= 1.5;
    if (hi > 2.0 * max_radius) break;
  }
  if (margin(hi) < 0.0 || hi > 2.0 * max_radius)
    throw Error(ErrorKind::DegenerateGeometry, "build_contour: truncation radius exceeds the configured ceiling");
  double lo = 0.5;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) >= 0.0 ? hi : lo) = mid;
  }
  if (hi > max_radius)
    throw Error(ErrorKind::DegenerateGeometry, "build_contour: truncation radius exceeds the configured ceiling");
  return hi;
}

/// Decay rate of e^{-ib/k} along direction `angle` toward k = 0.
inline double endpoint_decay(const LaplaceIntegrand& f, double angle) {
  return -std::real(cplx(0.0, -1.0) * f.b * std::polar(1.0, -angle));
}

inline double origin_extent(const LaplaceIntegrand& f, double angle, double rho, double tail_tol) {
  const double big_l = -std::log(tail_tol);
  const double cap = 2.0 * (big_l + 1.0) + std::log(std::max(rho, 1.0));
  const double gamma = endpoint_decay(f, angle);
  if (f.b == cplx{} || gamma <= 0.0) return cap;
  return std::clamp(std::log(rho * (big_l + 1.0) / gamma) + 1.0, 0.5, cap);
}

inline std::vector<Leg> make_legs(ContourKind kind, double beta, double rho, double radius,
                                  const LaplaceIntegrand& f, double tail_tol) {
  const double dr = start_right(beta);
  const double dl = start_left(beta);
  auto origin = [&](double d, bool outward) { return Leg::origin(d, rho, origin_extent(f, d, rho, tail_tol), outward); };
  switch (kind) {
    case ContourKind::LPlus:
      return {Leg::ray(kValleyLeft, radius, rho), Leg::arc(rho, kValleyLeft, kValleyDown),
              Leg::ray(kValleyDown, rho, radius)};
    case ContourKind::LMinus:
      return {Leg::ray(kValleyRight, radius, rho), Leg::arc(rho, kValleyRight, kValleyDown),
              Leg::ray(kValleyDown, rho, radius)};
    case ContourKind::RPlus:
      return {origin(dl, true), Leg::arc(rho, dl, kValleyLeft), Leg::ray(kValleyLeft, rho, radius)};
    case ContourKind::RMinus:
      return {origin(dr, true), Leg::arc(rho, dr, kValleyRight), Leg::ray(kValleyRight, rho, radius)};
    case ContourKind::O:
      return {origin(dr, true), Leg::arc(rho, dr, dl), origin(dl, false)};
  }
  throw Error(ErrorKind::InvalidKindForSector, "build_contour: unknown contour kind");
}

/// Largest Re log|integrand| over a coarse sampling of the legs.
inline double peak_log(const std::vector<Leg>& legs, const LaplaceIntegrand& f) {
  constexpr int kSamples = 48;
  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& leg : legs) {
    for (int i = 0; i <= kSamples; ++i) {
      const double t = leg.lo() + (leg.hi() - leg.lo()) * i / kSamples;
      const LegPoint p = leg.at(t);
      if (p.k == cplx{}) continue;
      peak = std::max(peak, f.log_value(p.k, p.arg).real());
    }
  }
  return peak;
}

inline bool valid_kind(ContourKind kind) {
  switch (kind) {
    case ContourKind::LPlus:
    case ContourKind::LMinus:
    case ContourKind::RPlus:
    case ContourKind::RMinus:
    case ContourKind::O: return true;
  }
  return false;
}

}  // namespace detail

/// Builds the contour with a prescribed arc radius (the distance at which the
/// legs leave the origin region).
inline ContourPath build_contour_with_radius(ContourKind kind, const ShiftedArgs& args, const EngineConfig& config,
                                             double arc_radius) {
  if (!detail::valid_kind(kind))
    throw Error(ErrorKind::InvalidKindForSector, "build_contour: unknown contour kind");
  const auto f = LaplaceIntegrand::of(args);
  const double beta = args.orientation();
  ContourPath path;
  path.kind = kind;
  path.cut_angle = std::numbers::pi / 2.0 + beta;
  path.truncation_radius = detail::truncation_radius(f, config.tail_tol, config.max_radius);
  if (!(arc_radius > 0.0 && arc_radius < path.truncation_radius))
    throw Error(ErrorKind::DegenerateGeometry, "build_contour: arc radius must lie inside the truncation radius");
  path.endpoint_scale = arc_radius;
  path.node_ceiling = config.node_ceiling;
  path.legs = detail::make_legs(kind, beta, arc_radius, path.truncation_radius, f, config.tail_tol);
  return path;
}

/// Builds the L±, R± or O contour for `args`. Valley legs are rays along the
/// valley bisectors truncated where the cubic decay reaches config.tail_tol;
/// the arc radius is picked to minimise the largest integrand modulus on the
/// path, with the saddle moduli among the candidates when config.saddle_hint
/// is set.
inline ContourPath build_contour(ContourKind kind, const ShiftedArgs& args, const EngineConfig& config) {
  if (!detail::valid_kind(kind))
    throw Error(ErrorKind::InvalidKindForSector, "build_contour: unknown contour kind");
  const auto f = LaplaceIntegrand::of(args);
  const double radius = detail::truncation_radius(f, config.tail_tol, config.max_radius);
  const double ceiling = radius / 1.5;

  std::vector<double> candidates;
  for (double r = 0.05; r <= 8.0; r *= 1.25) candidates.push_back(r);
  if (config.saddle_hint) {
    const cplx s1 = std::sqrt(args.z + args.z0), s0 = std::sqrt(args.z);
    candidates.push_back(std::abs(s1 + s0));
    candidates.push_back(std::abs(s1 - s0));
    if (auto h = saddle_hint(kind, args)) candidates.push_back(std::abs(h->k));
  }

  const double beta = args.orientation();
  double best_rho = 1.0;
  double best_peak = std::numeric_limits<double>::infinity();
  for (double rho : candidates) {
    if (!(rho > 1e-3 && rho < ceiling)) continue;
    const double peak = detail::peak_log(detail::make_legs(kind, beta, rho, radius, f, config.tail_tol), f);
    if (peak < best_peak) {
      best_peak = peak;
      best_rho = rho;
    }
  }
  return build_contour_with_radius(kind, args, config, std::min(best_rho, ceiling));
}

/// True when every leg keeps arg k inside (cut_angle - 2π, cut_angle), i.e. the
/// path stays on the sheet where the cut ray is not crossed.
inline bool stays_off_cut(const ContourPath& path) {
  const double hi = path.cut_angle;
  const double lo = path.cut_angle - 2.0 * std::numbers::pi;
  for (const auto& leg : path.legs) {
    for (double a : {leg.start_arg(), leg.end_arg()})
      if (!(a > lo && a < hi)) return false;
  }
  return true;
}

/// I_C(z; z0) along `path`. The result is flagged with converged = false when
/// the node ceiling is reached before the tolerance tol * max(1, |I|).
inline QuadResult laplace_integral(const ContourPath& path, const ShiftedArgs& args, double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-4))
    throw Error(ErrorKind::InvalidArgument, "laplace_integral: tol must lie in [1e-14, 1e-4]");
  const auto f = LaplaceIntegrand::of(args);
  for (const auto& leg : path.legs) {
    if (leg.shape == LegShape::Origin && f.b != cplx{} && detail::endpoint_decay(f, leg.angle) <= 0.0)
      throw Error(ErrorKind::EndpointSingularity,
                  "laplace_integral: e^{-i z0^2/4k} does not decay along an origin leg (leg outside the internal valley)");
  }
  auto out = integrate_path(std::span<const Leg>(path.legs), f, tol, tol, path.node_ceiling);
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
    throw Error(ErrorKind::ToleranceNotMet, "laplace_integral: quadrature produced a non-finite value");
  return out;
}

/// Convenience: build the default contour and integrate.
inline QuadResult laplace_integral(ContourKind kind, const ShiftedArgs& args, const EngineConfig& config = {}) {
  return laplace_integral(build_contour(kind, args, config), args, config.tol);
}

}  // namespace airyprod
