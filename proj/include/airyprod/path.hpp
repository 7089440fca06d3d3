#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "airyprod/gauss_kronrod.hpp"

namespace airyprod {

using cplx = std::complex<double>;

enum class LegShape {
  Origin,   // radial leg touching the origin, k = scale * e^{-s} * e^{i angle}
  Ray,      // radial leg k = r e^{i angle}, r between two finite radii
  Arc,      // circular arc k = radius * e^{i phi}
  Segment,  // straight segment between two points
  Tail,     // k = start + scale * (e^u - 1) * direction, u in [0, u_max]
};

/// A point on a leg together with the tracked argument and dk/dparam.
/// The Jacobian already includes the leg's orientation.
struct LegPoint {
  cplx k;
  double arg;
  cplx jac;
};

/// One parametric piece of an integration path. Radial and arc legs carry the
/// argument of k explicitly, so a path may wind onto neighbouring sheets of
/// k^{1/2}; segment and tail legs report the principal argument.
struct Leg {
  LegShape shape = LegShape::Ray;
  double angle = 0.0;   // Origin/Ray: direction
  double radius = 1.0;  // Origin: scale; Arc: radius; Tail: scale
  double from = 0.0;    // Ray: radii; Arc: angles
  double to = 1.0;
  double s_max = 0.0;   // Origin: parameter extent; Tail: u_max
  bool outward = true;  // Origin: 0 -> scale when true
  cplx p0{}, p1{};      // Segment: endpoints; Tail: start and direction

  static Leg origin(double angle, double scale, double s_max, bool outward) {
    Leg l;
    l.shape = LegShape::Origin;
    l.angle = angle;
    l.radius = scale;
    l.s_max = s_max;
    l.outward = outward;
    return l;
  }
  static Leg ray(double angle, double r_from, double r_to) {
    Leg l;
    l.shape = LegShape::Ray;
    l.angle = angle;
    l.from = r_from;
    l.to = r_to;
    return l;
  }
  static Leg arc(double radius, double phi_from, double phi_to) {
    Leg l;
    l.shape = LegShape::Arc;
    l.radius = radius;
    l.from = phi_from;
    l.to = phi_to;
    return l;
  }
  static Leg segment(cplx a, cplx b) {
    Leg l;
    l.shape = LegShape::Segment;
    l.p0 = a;
    l.p1 = b;
    return l;
  }
  static Leg tail(cplx start, cplx direction, double scale, double u_max) {
    Leg l;
    l.shape = LegShape::Tail;
    l.p0 = start;
    l.p1 = direction / std::abs(direction);
    l.radius = scale;
    l.s_max = u_max;
    return l;
  }

  /// Parameter interval, always increasing.
  double lo() const {
    switch (shape) {
      case LegShape::Ray:
      case LegShape::Arc: return std::min(from, to);
      default: return 0.0;
    }
  }
  double hi() const {
    switch (shape) {
      case LegShape::Ray:
      case LegShape::Arc: return std::max(from, to);
      case LegShape::Segment: return 1.0;
      default: return s_max;
    }
  }

  LegPoint at(double t) const {
    switch (shape) {
      case LegShape::Origin: {
        const cplx k = std::polar(radius * std::exp(-t), angle);
        // Outward travel runs s from s_max down to 0, which flips dk/ds = -k.
        return {k, angle, outward ? k : -k};
      }
      case LegShape::Ray: {
        const cplx dir = std::polar(1.0, angle);
        return {t * dir, angle, to >= from ? dir : -dir};
      }
      case LegShape::Arc: {
        const cplx k = std::polar(radius, t);
        const cplx jac = cplx(0.0, 1.0) * k;
        return {k, t, to >= from ? jac : -jac};
      }
      case LegShape::Segment: {
        const cplx k = p0 + t * (p1 - p0);
        return {k, std::arg(k), p1 - p0};
      }
      case LegShape::Tail: {
        const double g = std::exp(t);
        const cplx k = p0 + radius * (g - 1.0) * p1;
        return {k, std::arg(k), radius * g * p1};
      }
    }
    return {};
  }

  cplx start() const {
    switch (shape) {
      case LegShape::Origin: return outward ? cplx{} : std::polar(radius, angle);
      case LegShape::Ray: return std::polar(from, angle);
      case LegShape::Arc: return std::polar(radius, from);
      case LegShape::Segment: return p0;
      case LegShape::Tail: return p0;
    }
    return {};
  }
  cplx end() const {
    switch (shape) {
      case LegShape::Origin: return outward ? std::polar(radius, angle) : cplx{};
      case LegShape::Ray: return std::polar(to, angle);
      case LegShape::Arc: return std::polar(radius, to);
      case LegShape::Segment: return p1;
      case LegShape::Tail: return p0 + radius * (std::exp(s_max) - 1.0) * p1;
    }
    return {};
  }
  double start_arg() const {
    switch (shape) {
      case LegShape::Arc: return from;
      case LegShape::Origin:
      case LegShape::Ray: return angle;
      default: return std::arg(start());
    }
  }
  double end_arg() const {
    switch (shape) {
      case LegShape::Arc: return to;
      case LegShape::Origin:
      case LegShape::Ray: return angle;
      default: return std::arg(end());
    }
  }
};

/// Value of a path integral with its error estimate.
struct QuadResult {
  cplx value{};
  double abs_err_est = 0.0;
  std::size_t nodes = 0;
  bool converged = false;
};

namespace detail {

/// Number of panels needed so that none spans more than half a period of the
/// integrand's phase, estimated by sampling the unwrapped phase of f * jac.
template <class F>
std::size_t phase_panels(const Leg& leg, F& integrand, std::size_t cap) {
  constexpr int kSamples = 96;
  double total = 0.0;
  double prev = 0.0;
  bool have_prev = false;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = leg.lo() + (leg.hi() - leg.lo()) * i / kSamples;
    const LegPoint p = leg.at(t);
    const cplx v = integrand(p.k, p.arg) * p.jac;
    if (v == cplx{} || !std::isfinite(std::abs(v))) {
      have_prev = false;
      continue;
    }
    const double ph = std::arg(v);
    if (have_prev) {
      double d = ph - prev;
      d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
      total += std::abs(d);
    }
    prev = ph;
    have_prev = true;
  }
  const auto n = static_cast<std::size_t>(std::ceil(total / std::numbers::pi));
  return std::clamp<std::size_t>(n, 1, cap);
}

}  // namespace detail

/// Integrates `integrand(k, arg_k)` dk along the concatenated legs.
template <class F>
QuadResult integrate_path(std::span<const Leg> legs, F&& integrand, double abs_tol, double rel_tol,
                          std::size_t node_ceiling) {
  std::vector<quad::Interval> pieces;
  pieces.reserve(legs.size());
  for (const auto& leg : legs)
    pieces.push_back({leg.lo(), leg.hi(), detail::phase_panels(leg, integrand, 2048)});

  auto f = [&](std::size_t piece, double t) {
    const LegPoint p = legs[piece].at(t);
    return integrand(p.k, p.arg) * p.jac;
  };
  const auto out = quad::adaptive_gauss_kronrod(f, pieces, {abs_tol, rel_tol, node_ceiling});
  return QuadResult{out.value, out.abs_err, out.evals, out.converged && out.finite};
}

}  // namespace airyprod
