#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "airyprod/contour.hpp"

namespace airyprod {

/// Deterministic uniform variates on [0, 1). The engine's output sequence is
/// fixed by the standard, and the mapping to doubles is done here rather than
/// by a library distribution, so samples are identical across toolchains.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform over the disk |w| <= radius.
  std::complex<double> disk(double radius) {
    const double r = radius * std::sqrt(uniform());
    return std::polar(r, 2.0 * std::numbers::pi * uniform());
  }

  /// A shift of modulus up to `radius` whose argument lies in `sector`.
  std::complex<double> shift(Sector sector, double radius) {
    constexpr double pi = std::numbers::pi;
    const double r = radius * std::sqrt(uniform(0.01, 1.0));
    const double side = uniform() < 0.5 ? -1.0 : 1.0;
    switch (sector) {
      case Sector::Zero: return {0.0, 0.0};
      case Sector::Inner: return std::polar(r, uniform(-0.49, 0.49) * pi);
      case Sector::Boundary: return {0.0, side * r};
      case Sector::Outer: return std::polar(r, side * uniform(0.51, 1.0) * pi);
    }
    return {};
  }

 private:
  std::mt19937_64 engine_;
};

inline constexpr Sector kAllSectors[] = {Sector::Zero, Sector::Inner, Sector::Boundary, Sector::Outer};

/// n argument pairs with |z| <= z_radius, |z0| <= z0_radius, cycling through
/// the four sectors of arg z0.
inline std::vector<ShiftedArgs> sample_grid(std::size_t n, double z_radius, double z0_radius, std::uint64_t seed) {
  Sampler s(seed);
  std::vector<ShiftedArgs> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx z = s.disk(z_radius);
    out.push_back(ShiftedArgs::make(z, s.shift(kAllSectors[i % 4], z0_radius)));
  }
  return out;
}

/// n argument pairs whose shift lies in one sector.
inline std::vector<ShiftedArgs> sample_sector(Sector sector, std::size_t n, double z_radius, double z0_radius,
                                              std::uint64_t seed) {
  Sampler s(seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(sector) + 1)));
  std::vector<ShiftedArgs> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx z = s.disk(z_radius);
    out.push_back(ShiftedArgs::make(z, s.shift(sector, z0_radius)));
  }
  return out;
}

}  // namespace airyprod
