#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace airyprod::quad {

using cplx = std::complex<double>;

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600701242720, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Weights of the embedded Gauss rule, attached to the odd Kronrod nodes.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

/// One parameter interval of a piecewise integrand. `initial_panels` pre-splits
/// the interval, e.g. to cap panel width at half an oscillation period.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t initial_panels = 1;
};

struct Targets {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_evals = 200000;
};

struct Outcome {
  cplx value{};
  double abs_err = 0.0;
  std::size_t evals = 0;
  bool converged = false;
  bool finite = true;
};

namespace detail {

struct Panel {
  std::size_t piece;
  double lo, hi;
  cplx value;
  double err;
  double roundoff;
};

struct PanelOrder {
  bool operator()(const Panel& a, const Panel& b) const { return a.err < b.err; }
};

template <class F>
Panel eval_panel(F& f, std::size_t piece, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::array<cplx, 21> fv;
  fv[20] = f(piece, center);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    fv[2 * j] = f(piece, center - dx);
    fv[2 * j + 1] = f(piece, center + dx);
  }
  cplx kronrod = kKronrodWeights[10] * fv[20];
  cplx gauss{};
  double resabs = kKronrodWeights[10] * std::abs(fv[20]);
  for (std::size_t j = 0; j < 10; ++j) {
    const cplx pair = fv[2 * j] + fv[2 * j + 1];
    kronrod += kKronrodWeights[j] * pair;
    resabs += kKronrodWeights[j] * (std::abs(fv[2 * j]) + std::abs(fv[2 * j + 1]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  const cplx mean = 0.5 * kronrod;
  double resasc = kKronrodWeights[10] * std::abs(fv[20] - mean);
  for (std::size_t j = 0; j < 10; ++j)
    resasc += kKronrodWeights[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));

  kronrod *= half;
  gauss *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);

  double err = std::abs(kronrod - gauss);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  err = std::max(err, roundoff);
  return Panel{piece, lo, hi, kronrod, err, roundoff};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of a complex integrand defined
/// piecewise over several parameter intervals. `f(piece, t)` evaluates the
/// integrand of interval `piece` at parameter `t`. Stops when the summed error
/// estimate drops below max(abs_tol, rel_tol*|I|) or the evaluation ceiling is hit.
template <class F>
Outcome adaptive_gauss_kronrod(F&& f, std::span<const Interval> pieces, const Targets& targets) {
  std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::PanelOrder> queue;
  std::vector<detail::Panel> settled;
  Outcome out;

  for (std::size_t p = 0; p < pieces.size(); ++p) {
    const auto& iv = pieces[p];
    const std::size_t n = std::max<std::size_t>(1, iv.initial_panels);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = iv.lo + (iv.hi - iv.lo) * static_cast<double>(i) / static_cast<double>(n);
      const double b = iv.lo + (iv.hi - iv.lo) * static_cast<double>(i + 1) / static_cast<double>(n);
      queue.push(detail::eval_panel(f, p, a, b));
      out.evals += 21;
    }
  }

  auto totals = [&](cplx& value, double& err) {
    value = {};
    err = 0.0;
    auto copy = queue;
    while (!copy.empty()) {
      value += copy.top().value;
      err += copy.top().err;
      copy.pop();
    }
    for (const auto& s : settled) {
      value += s.value;
      err += s.err;
    }
  };

  cplx value;
  double err;
  totals(value, err);
  // Running sums are refreshed from scratch periodically to avoid drift.
  std::size_t since_refresh = 0;
  while (true) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) || !std::isfinite(err)) {
      out.finite = false;
      break;
    }
    const double target = std::max(targets.abs_tol, targets.rel_tol * std::abs(value));
    if (err <= target) {
      out.converged = true;
      break;
    }
    if (queue.empty() || out.evals + 42 > targets.max_evals) break;

    detail::Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    // Panels limited by roundoff, or too narrow to split, cannot improve.
    if (worst.err <= worst.roundoff || mid <= std::min(worst.lo, worst.hi) ||
        mid >= std::max(worst.lo, worst.hi)) {
      settled.push_back(worst);
      continue;
    }
    auto left = detail::eval_panel(f, worst.piece, worst.lo, mid);
    auto right = detail::eval_panel(f, worst.piece, mid, worst.hi);
    out.evals += 42;
    value += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    queue.push(left);
    queue.push(right);
    if (++since_refresh == 256) {
      totals(value, err);
      since_refresh = 0;
    }
  }
  totals(value, err);
  out.value = value;
  out.abs_err = err;
  if (out.converged) out.converged = err <= std::max(targets.abs_tol, targets.rel_tol * std::abs(value));
  return out;
}

}  // namespace airyprod::quad
