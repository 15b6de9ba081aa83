// SPDX-License-Identifier: Apache-2.0
//
// Bipartite work-extraction game: two daemons measure along a common angle
// swept over a great circle; the per-run work is one minus the symmetrized
// conditional entropy of their outcomes. Circle averages above
// 1/ln2 - 1 bits witness entanglement.

#pragma once

#include <numbers>
#include <utility>
#include <vector>

#include "demonwork/entropy.hpp"
#include "demonwork/optimize.hpp"
#include "demonwork/quantum.hpp"

namespace demonwork {

/// Separability thresholds, in bits.
struct Thresholds {
  static constexpr double two_qubit = std::numbers::log2e - 1.0;  // 1/ln2 - 1
  static constexpr double three_sep = 1.0 / 3.0;
  static constexpr double three_wclass = 7.0 / 9.0;
};
static_assert(Thresholds::two_qubit > 0.4426 && Thresholds::two_qubit < 0.4428);

/// Work in bits from one joint two-outcome table:
/// 1 - H(A,B) + [H(A) + H(B)]/2, clipped of sub-1e-12 rounding.
inline double work2_from_dist(const JointDist& d) {
  if (d.k != 2) fail("work2_from_dist: need a two-variable table");
  const double ha = binary_entropy(d.p[0] + d.p[1]);
  const double hb = binary_entropy(d.p[0] + d.p[2]);
  double w = 1.0 - shannon(d) + 0.5 * (ha + hb);
  if (w < 0.0 && w > -1e-12) w = 0.0;
  if (w > 1.0 && w < 1.0 + 1e-12) w = 1.0;
  return w;
}

/// Single-run work for one pair of measurement directions.
inline double work2(const DensityOp& rho, const BlochDir& dir_a, const BlochDir& dir_b) {
  if (rho.n != 2) fail("work2: two-qubit state required");
  return work2_from_dist(born_joint_dist(rho, {dir_a, dir_b}));
}

struct WorkResult2 {
  std::vector<std::pair<double, double>> per_angle;  // (theta, W) in bits
  double average = 0.0;
  GreatCircle circle = GreatCircle::xz();
  int n_points = 0;
};

/// Circle average of the game with both daemons at the same angle, on a
/// uniform periodic grid (the mean equals the periodic trapezoid rule).
/// Default grid sizes: 1024 for theory work, 19 to mirror the experiment.
inline WorkResult2 avg_work2(const DensityOp& rho, const GreatCircle& circle, int n_points = 1024) {
  if (rho.n != 2) fail("avg_work2: two-qubit state required");
  if (n_points < 2) fail("avg_work2: need at least two grid points");
  const PauliMoments pm = PauliMoments::from(rho);
  WorkResult2 result;
  result.circle = circle;
  result.n_points = n_points;
  result.per_angle.reserve(n_points);
  double sum = 0.0;
  for (int k = 0; k < n_points; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n_points;
    const BlochDir dir = circle.point(theta);
    const std::array<BlochDir, 2> dirs{dir, dir};
    const double w = work2_from_dist(pm.joint(std::span<const BlochDir>(dirs)));
    result.per_angle.emplace_back(theta, w);
    sum += w;
  }
  result.average = sum / n_points;
  return result;
}

struct CircleSearch {
  int normals = 512;      // direction-grid size for the circle normal
  int n_points = 1024;    // angle grid per circle
  double tol = 1e-6;      // refinement tolerance on the normal coordinates
};

struct MaxWork2 {
  WorkResult2 best;
  BlochDir normal{0, 1, 0};
  bool entangled_witnessed = false;  // average > 1/ln2 - 1
};

/// Maximum of avg_work2 over all great-circle orientations. The average is
/// invariant under the circle's phase origin, so the search space is the
/// two-parameter normal direction.
inline MaxWork2 max_work2(const DensityOp& rho, const CircleSearch& search = {}) {
  if (rho.n != 2) fail("max_work2: two-qubit state required");
  const PauliMoments pm = PauliMoments::from(rho);
  const auto value = [&](const BlochDir& normal) {
    const GreatCircle circle = GreatCircle::from_normal(normal);
    double sum = 0.0;
    for (int k = 0; k < search.n_points; ++k) {
      const BlochDir dir = circle.point(2.0 * std::numbers::pi * k / search.n_points);
      const std::array<BlochDir, 2> dirs{dir, dir};
      sum += work2_from_dist(pm.joint(std::span<const BlochDir>(dirs)));
    }
    return sum / search.n_points;
  };
  const DirectionOpt opt = maximize_over_sphere(value, search.normals, search.tol);
  MaxWork2 out;
  out.normal = opt.dir;
  out.best = avg_work2(rho, GreatCircle::from_normal(opt.dir), search.n_points);
  out.entangled_witnessed = out.best.average > Thresholds::two_qubit;
  return out;
}

}  // namespace demonwork
