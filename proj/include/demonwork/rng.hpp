// SPDX-License-Identifier: Apache-2.0
//
// Deterministic random-number utilities. The standard distributions are
// implementation-defined, so the samplers here are spelled out explicitly:
// results are bit-reproducible for a fixed seed on any platform. Parallel
// or per-task streams are derived from a master seed with splitmix64, never
// by sharing one engine.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "demonwork/quantum.hpp"

namespace demonwork {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent stream seed for task (a, b, c) under a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64(s);
  s = h ^ (a + 0x9e3779b97f4a7c15ULL);
  h = splitmix64(s);
  s = h ^ (b + 0xbf58476d1ce4e5b9ULL);
  h = splitmix64(s);
  s = h ^ (c + 0x94d049bb133111ebULL);
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Poisson sample: Knuth's product method for small means, rounded
  /// normal approximation (clamped at zero) for large ones.
  std::int64_t poisson(double mean) {
    if (mean < 0.0) fail("poisson: mean must be nonnegative");
    if (mean == 0.0) return 0;
    if (mean < 30.0) {
      const double limit = std::exp(-mean);
      double prod = uniform();
      std::int64_t k = 0;
      while (prod > limit) {
        prod *= uniform();
        ++k;
      }
      return k;
    }
    const double k = std::llround(mean + std::sqrt(mean) * normal());
    return k < 0.0 ? 0 : static_cast<std::int64_t>(k);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace demonwork
