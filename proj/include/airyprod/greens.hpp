#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "airyprod/airy.hpp"
#include "airyprod/error.hpp"
#include "airyprod/path.hpp"

namespace airyprod {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

/// Electron in a static field F, atomic units: energy E (hartree), field
/// (a.u.), observation point r and source point r' (bohr).
struct GreensParams {
  double energy = 0.0;
  Vec3 field{};
  Vec3 r{};
  Vec3 r_prime{};
};

struct ScaledVars {
  double xi;
  double eta;
};

/// Envelope used for the Airy evaluations in the closed form; weak fields push
/// |xi| well beyond the default oracle envelope.
inline constexpr double kGreensAiryEnvelope = 400.0;

namespace detail {

inline void check_finite(const GreensParams& p) {
  bool ok = std::isfinite(p.energy);
  for (int i = 0; i < 3; ++i)
    ok = ok && std::isfinite(p.field[i]) && std::isfinite(p.r[i]) && std::isfinite(p.r_prime[i]);
  if (!ok) throw Error(ErrorKind::NonFinite, "greens: parameters are not finite");
}

inline double separation(const GreensParams& p) {
  check_finite(p);
  const double rho = norm(p.r - p.r_prime);
  if (rho == 0.0) throw Error(ErrorKind::CoincidentPoints, "greens: r and r' coincide");
  return rho;
}

}  // namespace detail

/// xi = (F·(r+r') - 2E) / (2|F|)^{2/3},  eta = |F|^{1/3} |r-r'| / 2^{2/3}.
inline ScaledVars scaled_vars(const GreensParams& p) {
  const double rho = detail::separation(p);
  const double f = norm(p.field);
  if (f == 0.0) throw Error(ErrorKind::ZeroField, "scaled_vars: field is zero");
  const double xi = (dot(p.field, p.r + p.r_prime) - 2.0 * p.energy) / std::cbrt(4.0 * f * f);
  const double eta = std::cbrt(f) * rho / std::cbrt(4.0);
  return {xi, eta};
}

/// Outgoing-wave Green's function in a static field:
///   G = -e^{iπ/6}/|r-r'| · d/dη [Ai(ξ+η) Ai(e^{2iπ/3}(ξ-η))],
/// with the η-derivative taken by the product rule.
inline cplx greens_closed(const GreensParams& p) {
  const double rho = detail::separation(p);
  const auto [xi, eta] = scaled_vars(p);
  const auto a = airy(xi + eta, kGreensAiryEnvelope);
  const auto b = rotated_airy(1, xi - eta, kGreensAiryEnvelope);
  const cplx bracket = a.ai_prime * b.ai - a.ai * b.ai_prime;
  return -std::polar(1.0, std::numbers::pi / 6.0) / rho * bracket;
}

/// e^{ik|r-r'|} / (2π|r-r'|), k = sqrt(2E), and k = i sqrt(2|E|) for E < 0.
inline cplx greens_free(const GreensParams& p) {
  const double rho = detail::separation(p);
  const cplx k = p.energy >= 0.0 ? cplx(std::sqrt(2.0 * p.energy), 0.0) : cplx(0.0, std::sqrt(-2.0 * p.energy));
  return std::exp(cplx(0.0, 1.0) * k * rho) / (2.0 * std::numbers::pi * rho);
}

namespace detail {

/// Stationary points of the phase E t + ρ²/(2t) - s t/2 - F² t³/24, i.e. roots of
/// F² t⁴/8 - ε t² + ρ²/2 with ε = E - s/2, that the deformed path passes through,
/// ordered by distance from the origin.
inline std::vector<cplx> time_saddles(double eps, double f2, double rho) {
  if (f2 == 0.0) {
    if (eps > 0.0) return {cplx(rho / std::sqrt(2.0 * eps), 0.0)};
    if (eps < 0.0) return {cplx(0.0, -rho / std::sqrt(-2.0 * eps))};
    return {};
  }
  const double disc = eps * eps - f2 * rho * rho / 4.0;
  if (disc >= 0.0) {
    const double near = 4.0 / f2 * (eps - std::sqrt(disc));
    const double far = 4.0 / f2 * (eps + std::sqrt(disc));
    if (eps > 0.0) return {cplx(std::sqrt(near), 0.0), cplx(std::sqrt(far), 0.0)};
    return {cplx(0.0, -std::sqrt(-far))};
  }
  return {std::sqrt(cplx(4.0 / f2 * eps, -4.0 / f2 * std::sqrt(-disc)))};
}

struct TimeIntegrand {
  double energy, rho, s, f2;

  cplx log_value(cplx t) const {
    const cplx i{0.0, 1.0};
    return i * energy * t + i * rho * rho / (2.0 * t) - 0.5 * i * s * t - i * f2 * t * t * t / 24.0 - 1.5 * std::log(t);
  }
  cplx operator()(cplx t, double) const { return std::exp(log_value(t)); }
};

}  // namespace detail

/// Independent evaluation of the static-field Green's function from its
/// proper-time representation
///   G = e^{-iπ/4}/(2π)^{3/2} ∫_0^∞ exp[iEt + i|r-r'|²/(2t) - (i/2)F·(r+r')t - (i/24)F²t³] t^{-3/2} dt.
/// The path leaves t = 0 into the lower half plane, where e^{i|r-r'|²/2t}
/// decays, passes through the stationary points of the phase and leaves along
/// a decay direction of the cubic term (or of the linear term when F = 0).
inline cplx greens_time_integral(const GreensParams& p, double tol = 1e-10) {
  if (!(tol >= 1e-10)) throw Error(ErrorKind::InvalidArgument, "greens_time_integral: tol must be >= 1e-10");
  constexpr double pi = std::numbers::pi;
  const double rho = detail::separation(p);
  const double s = dot(p.field, p.r + p.r_prime);
  const double f2 = dot(p.field, p.field);
  const double eps = p.energy - 0.5 * s;
  const detail::TimeIntegrand h{p.energy, rho, s, f2};

  const auto saddles = detail::time_saddles(eps, f2, rho);
  std::vector<cplx> points;
  if (saddles.empty()) {
    points.push_back(std::polar(rho, -pi / 4.0));
  } else {
    const cplx first = saddles.front();
    points.push_back(std::arg(first) > -pi / 16.0 ? std::polar(0.5 * std::abs(first), -pi / 8.0) : 0.5 * first);
    points.insert(points.end(), saddles.begin(), saddles.end());
  }
  cplx direction;
  if (f2 > 0.0) direction = std::polar(1.0, -pi / 6.0);
  else if (eps > 0.0) direction = std::polar(1.0, pi / 4.0);
  else if (eps < 0.0) direction = {0.0, -1.0};
  else direction = std::polar(1.0, -pi / 4.0);

  const double big_l = 40.0;
  std::vector<Leg> legs;
  const cplx start = points.front();
  const double decay = rho * rho * -std::sin(std::arg(start)) / (2.0 * std::abs(start));
  if (!(decay > 0.0))
    throw Error(ErrorKind::EndpointSingularity, "greens_time_integral: t -> 0 leg is not in the decaying half plane");
  const double u_origin = std::clamp(std::log((big_l + 10.0) / decay) + 1.0, 1.0, 200.0);
  legs.push_back(Leg::origin(std::arg(start), std::abs(start), u_origin, true));
  for (std::size_t i = 0; i + 1 < points.size(); ++i) legs.push_back(Leg::segment(points[i], points[i + 1]));

  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& leg : legs)
    for (int i = 0; i <= 32; ++i) {
      const auto q = leg.at(leg.lo() + (leg.hi() - leg.lo()) * i / 32.0);
      peak = std::max(peak, (h.log_value(q.k) + std::log(q.jac)).real());
    }
  const cplx end = points.back();
  const double scale = std::max(std::abs(end), 1.0);
  double u_tail = 0.25;
  for (; u_tail < 160.0; u_tail += 0.25) {
    const auto q = Leg::tail(end, direction, scale, u_tail).at(u_tail);
    const double lv = (h.log_value(q.k) + std::log(q.jac)).real();
    peak = std::max(peak, lv);
    if (lv < peak - big_l) break;
  }
  legs.push_back(Leg::tail(end, direction, scale, u_tail));

  const double abs_tol = tol * 1e-8 * std::exp(peak);
  const auto out = integrate_path(std::span<const Leg>(legs), h, abs_tol, tol, 400000);
  if (!out.converged)
    throw Error(ErrorKind::ToleranceNotMet, "greens_time_integral: quadrature did not reach the requested tolerance");
  return std::polar(std::pow(2.0 * pi, -1.5), -pi / 4.0) * out.value;
}

/// Closed form for |F| > 0, free-particle form for F = 0.
inline cplx greens(const GreensParams& p) { return norm(p.field) == 0.0 ? greens_free(p) : greens_closed(p); }

/// |[-½Δ + F·r - E] G| at r (fixed r'), with a 7-point Laplacian of step h,
/// relative to |G| / |r-r'|².
inline double greens_operator_residual(const GreensParams& p, double h = 1e-3) {
  const double rho = detail::separation(p);
  const cplx g0 = greens(p);
  cplx lap = -6.0 * g0;
  for (int axis = 0; axis < 3; ++axis)
    for (double sgn : {-1.0, 1.0}) {
      GreensParams q = p;
      q.r[axis] += sgn * h;
      lap += greens(q);
    }
  lap /= h * h;
  const cplx applied = -0.5 * lap + (dot(p.field, p.r) - p.energy) * g0;
  return std::abs(applied) / (std::abs(g0) / (rho * rho));
}

}  // namespace airyprod
