#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "airyprod/gauss_kronrod.hpp"
#include "airyprod/path.hpp"

using namespace airyprod;
constexpr double pi = std::numbers::pi;

TEST(GaussKronrod, PolynomialIsExactOnOnePanel) {
  const std::array<quad::Interval, 1> iv{{{-1.0, 2.0, 1}}};
  auto f = [](std::size_t, double t) { return cplx(std::pow(t, 10), 0.0); };
  const auto out = quad::adaptive_gauss_kronrod(f, iv, {1e-12, 1e-12, 1000});
  EXPECT_TRUE(out.converged);
  EXPECT_NEAR(out.value.real(), (std::pow(2.0, 11) + 1.0) / 11.0, 1e-12);
  EXPECT_EQ(out.evals, 21u);
}

TEST(GaussKronrod, OscillatoryComplexIntegrand) {
  // ∫_0^{20} e^{i t^2} dt via Fresnel integrals.
  const std::array<quad::Interval, 1> iv{{{0.0, 20.0, 40}}};
  auto f = [](std::size_t, double t) { return std::exp(cplx(0.0, t * t)); };
  const auto out = quad::adaptive_gauss_kronrod(f, iv, {1e-12, 1e-12, 200000});
  EXPECT_TRUE(out.converged);
  const cplx ref(0.60540059950431265, 0.63981600617583289);
  EXPECT_LT(std::abs(out.value - ref), 1e-10);
}

TEST(GaussKronrod, EndpointSingularityAdapts) {
  const std::array<quad::Interval, 1> iv{{{0.0, 1.0, 1}}};
  auto f = [](std::size_t, double t) { return cplx(1.0 / std::sqrt(t), 0.0); };
  const auto out = quad::adaptive_gauss_kronrod(f, iv, {1e-10, 1e-10, 100000});
  EXPECT_NEAR(out.value.real(), 2.0, 1e-8);
}

TEST(GaussKronrod, PiecesAreSummed) {
  const std::array<quad::Interval, 2> iv{{{0.0, 1.0, 1}, {0.0, pi, 3}}};
  auto f = [](std::size_t piece, double t) { return piece == 0 ? cplx(std::exp(t)) : cplx(0.0, std::sin(t)); };
  const auto out = quad::adaptive_gauss_kronrod(f, iv, {1e-13, 1e-13, 10000});
  EXPECT_TRUE(out.converged);
  EXPECT_NEAR(out.value.real(), std::exp(1.0) - 1.0, 1e-12);
  EXPECT_NEAR(out.value.imag(), 2.0, 1e-12);
}

TEST(GaussKronrod, CeilingReportsNonConvergence) {
  const std::array<quad::Interval, 1> iv{{{0.0, 1.0, 1}}};
  auto f = [](std::size_t, double t) { return cplx(std::sin(1.0 / (t + 1e-6)), 0.0); };
  const auto out = quad::adaptive_gauss_kronrod(f, iv, {1e-14, 1e-14, 200});
  EXPECT_FALSE(out.converged);
  EXPECT_LE(out.evals, 200u);
}

TEST(GaussKronrod, NonFiniteIsFlagged) {
  const std::array<quad::Interval, 1> iv{{{0.0, 1.0, 1}}};
  auto f = [](std::size_t, double) { return cplx(std::numeric_limits<double>::infinity(), 0.0); };
  const auto out = quad::adaptive_gauss_kronrod(f, iv, {1e-10, 1e-10, 1000});
  EXPECT_FALSE(out.finite);
  EXPECT_FALSE(out.converged);
}

TEST(Path, LegEndpoints) {
  const auto o_out = Leg::origin(pi / 3, 2.0, 30.0, true);
  EXPECT_EQ(o_out.start(), cplx{});
  EXPECT_LT(std::abs(o_out.end() - std::polar(2.0, pi / 3)), 1e-15);
  const auto o_in = Leg::origin(pi / 3, 2.0, 30.0, false);
  EXPECT_EQ(o_in.end(), cplx{});

  const auto ray = Leg::ray(-pi / 2, 5.0, 1.0);
  EXPECT_LT(std::abs(ray.start() - cplx(0.0, -5.0)), 1e-15);
  EXPECT_LT(std::abs(ray.end() - cplx(0.0, -1.0)), 1e-15);

  const auto arc = Leg::arc(1.0, pi / 6, -7 * pi / 6);
  EXPECT_DOUBLE_EQ(arc.start_arg(), pi / 6);
  EXPECT_DOUBLE_EQ(arc.end_arg(), -7 * pi / 6);
  EXPECT_LT(arc.lo(), arc.hi());
}

TEST(Path, LengthsAndOrientation) {
  auto one = [](cplx, double) { return cplx(1.0); };
  // ∫ dk along a path equals end - start whatever the shape.
  const std::vector<Leg> legs = {Leg::origin(0.2, 1.5, 40.0, true), Leg::arc(1.5, 0.2, -2.0), Leg::ray(-2.0, 1.5, 4.0),
                                 Leg::segment(std::polar(4.0, -2.0), {3.0, 1.0}),
                                 Leg::tail({3.0, 1.0}, {1.0, 1.0}, 0.5, 2.0)};
  const auto q = integrate_path(std::span<const Leg>(legs), one, 1e-13, 1e-13, 100000);
  EXPECT_TRUE(q.converged);
  EXPECT_LT(std::abs(q.value - legs.back().end()), 1e-12);
}

TEST(Path, ArcTracksArgumentAcrossSheets) {
  // ∮ k^{-1/2} dk over a full turn starting at arg 0 picks up the sheet change.
  auto inv_sqrt = [](cplx k, double arg) { return std::polar(1.0 / std::sqrt(std::abs(k)), -arg / 2); };
  const std::vector<Leg> legs = {Leg::arc(1.0, 0.0, 2 * pi)};
  const auto q = integrate_path(std::span<const Leg>(legs), inv_sqrt, 1e-13, 1e-13, 100000);
  // 2 k^{1/2} from arg 0 to arg 2π: 2(-1) - 2(1) = -4.
  EXPECT_LT(std::abs(q.value - cplx(-4.0, 0.0)), 1e-12);
}
