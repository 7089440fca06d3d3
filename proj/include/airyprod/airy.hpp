#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "airyprod/error.hpp"

namespace airyprod {

using cplx = std::complex<double>;

inline constexpr double kAiryEnvelope = 50.0;

// Ai(0) = 3^{-2/3}/Γ(2/3) and Ai'(0) = -3^{-1/3}/Γ(1/3).
inline constexpr double kAiAtZero = 0.35502805388781723926;
inline constexpr double kAiPrimeAtZero = -0.25881940379280679841;

/// e^{2iπ/3}, the rotation mapping solutions of v'' = z v onto each other.
inline const cplx kOmega{-0.5, 0.86602540378443864676};

/// Ai(z) and Ai'(z). `est_rel_err` bounds the error of both relative to the
/// modulus scale sqrt(|Ai|^2 + |Ai'|^2 / max(1,|z|)); near a zero of Ai that
/// scale is set by Ai', so the bound stays meaningful there.
struct AiryValue {
  cplx ai;
  cplx ai_prime;
  double est_rel_err = 0.0;
};

namespace detail {

inline constexpr double kSeriesRadius = 2.5;

inline double modulus_scale(cplx z, cplx ai, cplx aip) {
  const double w = std::max(1.0, std::abs(z));
  return std::sqrt(std::norm(ai) + std::norm(aip) / w);
}

inline double scaled_error(cplx z, double err_ai, double err_aip, cplx ai, cplx aip) {
  const double m = modulus_scale(z, ai, aip);
  const double e = std::max(err_ai, err_aip / std::sqrt(std::max(1.0, std::abs(z))));
  return m > 0.0 ? e / m : e;
}

/// Maclaurin series from the Taylor recurrence a_n = a_{n-3} / (n (n-1)).
inline AiryValue airy_maclaurin(cplx z) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::array<double, 3> coef = {kAiAtZero, kAiPrimeAtZero, 0.0};  // a_{n-3}, a_{n-2}, a_{n-1}
  cplx ai = kAiAtZero;
  cplx aip = kAiPrimeAtZero;
  double abs_ai = std::abs(kAiAtZero);
  double abs_aip = std::abs(kAiPrimeAtZero);
  cplx zpow = z;  // z^{n-1}
  ai += kAiPrimeAtZero * z;
  abs_ai += std::abs(kAiPrimeAtZero * z);
  int quiet = 0;
  for (int n = 3; n < 400; ++n) {
    const double an = coef[0] / (static_cast<double>(n) * (n - 1));
    coef = {coef[1], coef[2], an};
    const cplx dterm = static_cast<double>(n) * an * zpow * z;  // n a_n z^{n-1}
    zpow *= z;
    const cplx term = an * zpow * z;  // a_n z^n
    ai += term;
    aip += dterm;
    abs_ai += std::abs(term);
    abs_aip += std::abs(dterm);
    const bool small = std::abs(term) <= eps * std::abs(ai) && std::abs(dterm) <= eps * std::abs(aip);
    quiet = small ? quiet + 1 : 0;
    if (quiet >= 3) break;
  }
  AiryValue v{ai, aip, 0.0};
  v.est_rel_err = scaled_error(z, 4.0 * eps * abs_ai, 4.0 * eps * abs_aip, ai, aip);
  return v;
}

inline constexpr std::array<double, 8> kLegendreNodes16 = {
    0.095012509837637440185, 0.28160355077925891323, 0.45801677765722738634,
    0.61787624440264374845,  0.7554044083550030339,  0.86563120238783174388,
    0.94457502307323257608,  0.9894009349916499326};
inline constexpr std::array<double, 8> kLegendreWeights16 = {
    0.18945061045506849629, 0.18260341504492358887, 0.16915651939500253819,
    0.14959598881657673208, 0.12462897125553387205, 0.09515851168249278481,
    0.062253523938647892863, 0.027152459411754094852};

inline constexpr double kGammaFiveSixths = 1.1287870299081259613;
inline constexpr double kGammaSevenSixths = 0.92771933363003920071;

/// Ai and Ai' from the Laplace-type integrals of K_{1/3} and K_{2/3},
///   Ai(z)  =  e^{-ζ} / (2 sqrt(pi) z^{1/4} Γ(5/6)) ∫ e^{-t} t^{-1/6} (1 + t/2ζ)^{-1/6} dt,
///   Ai'(z) = -z^{1/4} e^{-ζ} / (2 sqrt(pi) Γ(7/6)) ∫ e^{-t} t^{1/6} (1 + t/2ζ)^{1/6} dt,
/// ζ = (2/3) z^{3/2}. The t-path is the ray arg t = π/4, which keeps the
/// branch point t = -2ζ at least π/4 away for 0 <= arg z <= 2π/3. The
/// substitution t = s^6 e^{iπ/4} removes the endpoint singularity.
inline AiryValue airy_laplace_upper(cplx z) {
  constexpr double theta = std::numbers::pi / 4.0;
  constexpr int panels = 24;
  const cplx rot = std::polar(1.0, theta);
  const double s_max = std::pow(45.0 / std::cos(theta), 1.0 / 6.0);
  const cplx root = std::sqrt(z);
  const cplx zeta = (2.0 / 3.0) * z * root;
  const cplx quarter = std::sqrt(root);
  const cplx inv_two_zeta = 1.0 / (2.0 * zeta);

  cplx j_ai{}, j_aip{};
  const double width = s_max / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (std::size_t i = 0; i < kLegendreNodes16.size(); ++i) {
      for (int side : {-1, 1}) {
        const double s = mid + side * 0.5 * width * kLegendreNodes16[i];
        const double s2 = s * s;
        const double s4 = s2 * s2;
        const cplx t = s4 * s2 * rot;
        const cplx g = std::log(1.0 + t * inv_two_zeta) / 6.0;
        const cplx base = 0.5 * width * kLegendreWeights16[i] * 6.0 * std::exp(-t);
        j_ai += base * s4 * std::exp(-g);
        j_aip += base * s4 * s2 * std::exp(g);
      }
    }
  }
  j_ai *= rot * std::polar(1.0, -theta / 6.0);
  j_aip *= rot * std::polar(1.0, theta / 6.0);

  const double norm = 2.0 * std::sqrt(std::numbers::pi);
  const cplx decay = std::exp(-zeta);
  AiryValue v;
  v.ai = decay * j_ai / (norm * quarter * kGammaFiveSixths);
  v.ai_prime = -quarter * decay * j_aip / (norm * kGammaSevenSixths);
  // Quadrature error is below 1e-15; the phase of e^{-ζ} carries |ζ| ulps.
  v.est_rel_err = 2.0 * (2e-15 + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(zeta));
  return v;
}

inline AiryValue airy_laplace(cplx z) {
  if (z.imag() < 0.0) {
    auto v = airy_laplace_upper(std::conj(z));
    return {std::conj(v.ai), std::conj(v.ai_prime), v.est_rel_err};
  }
  return airy_laplace_upper(z);
}

/// Valid for Im z >= 0, |z| > kSeriesRadius. For arg z > 2π/3 the connection
/// identity Ai(z) = -ω Ai(ωz) - ω² Ai(ω² z) moves both evaluations into
/// |arg| <= 2π/3.
inline AiryValue airy_large(cplx z) {
  if (std::arg(z) <= 2.0 * std::numbers::pi / 3.0) return airy_laplace(z);
  const cplx w = kOmega;
  const cplx w2 = kOmega * kOmega;
  const auto a = airy_laplace(w * z);
  const auto b = airy_laplace(w2 * z);
  AiryValue v;
  v.ai = -w * a.ai - w2 * b.ai;
  v.ai_prime = -w2 * a.ai_prime - w * b.ai_prime;
  const double err_ai = std::abs(a.ai) * a.est_rel_err + std::abs(b.ai) * b.est_rel_err;
  const double err_aip = std::abs(a.ai_prime) * a.est_rel_err + std::abs(b.ai_prime) * b.est_rel_err;
  v.est_rel_err = scaled_error(z, err_ai, err_aip, v.ai, v.ai_prime);
  return v;
}

}  // namespace detail

/// Ai(z) and Ai'(z) for |z| <= envelope (default 50).
///
/// Series for |z| <= 2.5, otherwise Laplace-type integrals routed through
/// |arg z| <= 2π/3. Schwarz reflection is exact: Ai(conj z) is computed as
/// conj(Ai(z)), and real z gives results with zero imaginary part.
inline AiryValue airy(cplx z, double envelope = kAiryEnvelope) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::NonFinite, "airy: argument is not finite");
  if (std::abs(z) > envelope)
    throw Error(ErrorKind::EnvelopeExceeded, "airy: |z| exceeds the evaluation envelope");

  const bool lower = z.imag() < 0.0;
  const cplx zu = lower ? std::conj(z) : z;
  AiryValue v = std::abs(zu) <= detail::kSeriesRadius ? detail::airy_maclaurin(zu) : detail::airy_large(zu);
  if (lower) {
    v.ai = std::conj(v.ai);
    v.ai_prime = std::conj(v.ai_prime);
  }
  if (z.imag() == 0.0) {
    v.ai = v.ai.real();
    v.ai_prime = v.ai_prime.real();
  }
  if (!std::isfinite(std::abs(v.ai)) || !std::isfinite(std::abs(v.ai_prime)))
    throw Error(ErrorKind::EnvelopeExceeded, "airy: result overflows double precision");
  return v;
}

/// Ai(ω^rot x) and its derivative with respect to x, rot in {-1, 0, 1}.
inline AiryValue rotated_airy(int rot, cplx x, double envelope = kAiryEnvelope) {
  if (rot == 0) return airy(x, envelope);
  const cplx r = rot > 0 ? kOmega : std::conj(kOmega);
  AiryValue v = airy(r * x, envelope);
  v.ai_prime *= r;
  return v;
}

/// |(Ai(z+h) - 2 Ai(z) + Ai(z-h))/h^2 - z Ai(z)| / max(1, |Ai(z)|).
inline double airy_ode_residual(cplx z, double h) {
  if (!(h >= 1e-4 && h <= 1e-1))
    throw Error(ErrorKind::InvalidArgument, "airy_ode_residual: step must lie in [1e-4, 1e-1]");
  const cplx mid = airy(z).ai;
  const cplx second = (airy(z + h).ai - 2.0 * mid + airy(z - h).ai) / (h * h);
  return std::abs(second - z * mid) / std::max(1.0, std::abs(mid));
}

}  // namespace airyprod
