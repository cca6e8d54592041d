#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace geofix {

/// Seeded generator with portable draws. The distributions are built from raw
/// mt19937_64 output so that identical seeds give identical streams across
/// standard-library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

  /// exp(uniform(log lo, log hi)).
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  /// Dyadic lambda m / 2^24 with m uniform in [0, 2^24]. Both 1 - lambda and
  /// differences of two such values are exact in binary64.
  double dyadic_lambda() {
    constexpr std::uint64_t kDen = std::uint64_t{1} << 24;
    return static_cast<double>(index(kDen + 1)) / static_cast<double>(kDen);
  }

  /// Standard normal via Box-Muller (portable, unlike std::normal_distribution).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace geofix
