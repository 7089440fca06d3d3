#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "airyprod/airy.hpp"
#include "airyprod/sampling.hpp"

using namespace airyprod;

namespace {

struct Reference {
  cplx z, ai, ai_prime;
};

// 30-digit values from an independent arbitrary-precision evaluation.
const Reference kReferences[] = {
    {{1, 2}, {-0.219386254981427557, -0.175385911408109418}, {0.170444978178914823, 0.38762243941329509}},
    {{-10, 0}, {0.0402412384864431907, 0}, {0.996265044132790056, 0}},
    {{0, 5}, {29.9014823980071664, 21.6778315987836366}, {-14.1994453289480475, -80.0542240843152658}},
    {{13.1637384283555907, 7.191383079063045},
     {1.26347093471224795e-14, -6.9440401592854229e-14},
     {-1.13590708855968897e-13, 2.49584780195509348e-13}},
    {{2.4, 0.3}, {0.0165676704168107968, -0.00888656508709414313}, {-0.027986368864673116, 0.0131512010858416761}},
    {{-1.08198177502257024, 2.36417330974677249},
     {2.30233313473288976, -2.82533494100480172},
     {-5.43465093887191879, -0.521586817884667724}},
    {{-3.7, 0.1}, {-0.287251282316433601, -0.0585854437597625146}, {-0.592114036258264713, 0.105184712097600563}},
    {{-16.0228723109386743, 11.9694428820791299},
     {-1.07176204169171353e+20, 2.11548891205531187e+20},
     {1.04628128443331562e+21, 1.57871066714631532e+20}},
    {{8, 0}, {4.69220761609923163e-8, 0}, {-1.34143929790678657e-7, 0}},
    {{21.6120922347255887, -33.6588393923158603},
     {2.92350503103342842e-7, -6.78742906606503317e-7},
     {4.3085972941848449e-7, 4.65445710686796774e-6}},
    {{-0.5, -1.5}, {0.638976101920979825, 0.689321658374499409}, {-1.03818971574589422, 0.0149857422258546248}},
    {{6, 0.2}, {8.77442843798822097e-6, -4.76991685389159404e-6}, {-0.0000220356397228331831, 0.000011529233149281136}},
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Airy, ValuesAtOrigin) {
  const auto v = airy(0.0);
  EXPECT_NEAR(v.ai.real(), 0.35502805388781724, 1e-16);
  EXPECT_NEAR(v.ai_prime.real(), -0.25881940379280680, 1e-16);
  EXPECT_EQ(v.ai.imag(), 0.0);
  EXPECT_EQ(v.ai_prime.imag(), 0.0);
  EXPECT_NEAR(std::norm(v.ai), 0.126044919047370861536890237495, 1e-16);
}

TEST(Airy, MatchesHighPrecisionReferences) {
  for (const auto& r : kReferences) {
    const auto v = airy(r.z);
    EXPECT_LT(rel(v.ai, r.ai), 1e-12) << "z = " << r.z;
    EXPECT_LT(rel(v.ai_prime, r.ai_prime), 1e-12) << "z = " << r.z;
  }
}

TEST(Airy, ErrorBoundCoversReferences) {
  for (const auto& r : kReferences) {
    const auto v = airy(r.z);
    const double m = std::sqrt(std::norm(r.ai) + std::norm(r.ai_prime) / std::max(1.0, std::abs(r.z)));
    const double err = std::max(std::abs(v.ai - r.ai), std::abs(v.ai_prime - r.ai_prime) / std::sqrt(std::max(1.0, std::abs(r.z))));
    EXPECT_LE(err / m, std::max(v.est_rel_err, 1e-15)) << "z = " << r.z;
    if (std::abs(r.z) <= 20.0) {
      EXPECT_LE(v.est_rel_err, 1e-12) << "z = " << r.z;
    }
  }
}

TEST(Airy, RealArgumentsGiveRealValues) {
  for (double x : {-30.0, -7.3, -2.5, -1.0, 0.0, 0.4, 2.5, 2.6, 11.0, 45.0}) {
    const auto v = airy(x);
    EXPECT_EQ(v.ai.imag(), 0.0) << x;
    EXPECT_EQ(v.ai_prime.imag(), 0.0) << x;
  }
}

TEST(Airy, SchwarzReflection) {
  Sampler s(17);
  for (int i = 0; i < 100; ++i) {
    const cplx z = s.disk(20.0);
    const auto a = airy(z), b = airy(std::conj(z));
    EXPECT_LE(std::abs(b.ai - std::conj(a.ai)), 1e-13 * std::abs(a.ai));
    EXPECT_LE(std::abs(b.ai_prime - std::conj(a.ai_prime)), 1e-13 * std::abs(a.ai_prime));
  }
}

TEST(Airy, ConnectionIdentity) {
  Sampler s(23);
  const cplx ep = std::polar(1.0, std::numbers::pi / 3.0);
  for (int i = 0; i < 200; ++i) {
    const cplx z = s.disk(10.0);
    const cplx a = airy(z).ai;
    const cplx p = std::conj(ep) * rotated_airy(1, z).ai;
    const cplx m = ep * rotated_airy(-1, z).ai;
    EXPECT_LE(std::abs(p + m - a), 1e-11 * std::max({std::abs(a), std::abs(p), std::abs(m)})) << z;
  }
}

TEST(Airy, WronskianOfRotatedPairIsConstant) {
  // W{Ai(z), Ai(ωz)} = Ai(z) ω Ai'(ωz) - Ai'(z) Ai(ωz) does not depend on z.
  Sampler s(29);
  const cplx w0 = std::polar(1.0 / (2.0 * std::numbers::pi), -std::numbers::pi / 6.0);
  for (int i = 0; i < 100; ++i) {
    const cplx z = s.disk(6.0);
    const auto a = airy(z);
    const auto b = rotated_airy(1, z);
    const cplx t1 = a.ai * b.ai_prime, t2 = a.ai_prime * b.ai;
    // Relative to the size of the cancelling terms.
    EXPECT_LE(std::abs(t1 - t2 - w0), 1e-12 * std::max({std::abs(t1), std::abs(t2), std::abs(w0)})) << z;
  }
}

TEST(Airy, SeriesAndIntegralAgreeOnOverlapAnnulus) {
  Sampler s(31);
  for (int i = 0; i < 200; ++i) {
    const cplx z = std::polar(s.uniform(2.25, 2.75), s.uniform(0.0, std::numbers::pi));
    const auto a = detail::airy_maclaurin(z);
    const auto b = detail::airy_large(z);
    const double m = detail::modulus_scale(z, a.ai, a.ai_prime);
    EXPECT_LE(std::abs(a.ai - b.ai) / m, 1e-13) << z;
    EXPECT_LE(std::abs(a.ai_prime - b.ai_prime) / m, 3e-13) << z;
  }
}

TEST(Airy, FiniteDifferenceResidual) {
  EXPECT_LT(airy_ode_residual(0.0, 1e-3), 1e-6);
  EXPECT_LT(airy_ode_residual({2.0, 1.0}, 1e-3), 1e-6);
  EXPECT_LT(airy_ode_residual(-5.0, 1e-2), 1e-4);
}

TEST(Airy, Errors) {
  EXPECT_THROW(airy({50.5, 0.0}), Error);
  try {
    airy({0.0, 60.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EnvelopeExceeded);
  }
  try {
    airy({std::nan(""), 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFinite);
  }
  try {
    airy_ode_residual(1.0, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
  EXPECT_NO_THROW(airy({50.0, 0.0}));
  EXPECT_NO_THROW(airy({-300.0, 0.0}, 400.0));
}
