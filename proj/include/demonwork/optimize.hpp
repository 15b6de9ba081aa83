// SPDX-License-Identifier: Apache-2.0
//
// Small deterministic optimizers used by the direction and angle searches.

#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "demonwork/quantum.hpp"

namespace demonwork {

/// Quasi-uniform direction grid (golden-angle spiral), seeded with the six
/// coordinate axes so that axis-aligned optima are hit exactly.
inline std::vector<BlochDir> fibonacci_sphere(int count) {
  std::vector<BlochDir> dirs;
  dirs.reserve(count + 6);
  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    dirs.push_back(BlochDir::unit(a));
    dirs.push_back(-BlochDir::unit(a));
  }
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double zc = 1.0 - 2.0 * (i + 0.5) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - zc * zc));
    const double a = golden * i;
    dirs.push_back(BlochDir::normalized(r * std::cos(a), r * std::sin(a), zc));
  }
  return dirs;
}

/// Golden-section maximization of a unimodal-enough f on [lo, hi].
template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

struct DirectionOpt {
  BlochDir dir;
  double value = 0.0;
};

/// Maximizes f over the sphere: grid scan (ties resolved toward the lowest
/// grid index) followed by alternating golden-section refinement of the
/// polar/azimuth coordinates down to the given parameter tolerance.
template <class F>
DirectionOpt maximize_over_sphere(F&& f, int grid_count, double tol) {
  const std::vector<BlochDir> grid = fibonacci_sphere(grid_count);
  DirectionOpt best{grid.front(), f(grid.front())};
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v > best.value) best = {grid[i], v};
  }
  double theta = std::acos(std::clamp(best.dir.z, -1.0, 1.0));
  double phi = std::atan2(best.dir.y, best.dir.x);
  double window = std::numbers::pi / std::sqrt(static_cast<double>(grid_count));
  while (window > tol) {
    theta = golden_max([&](double t) { return f(BlochDir::polar(t, phi)); },
                       theta - window, theta + window, tol);
    phi = golden_max([&](double p) { return f(BlochDir::polar(theta, p)); },
                     phi - window, phi + window, tol);
    window *= 0.5;
  }
  const BlochDir refined = BlochDir::polar(theta, phi);
  const double v = f(refined);
  if (v > best.value) best = {refined, v};
  return best;
}

/// Halton low-discrepancy sequence (index >= 0) in [0, 1).
inline double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  int i = index + 1;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

}  // namespace demonwork
