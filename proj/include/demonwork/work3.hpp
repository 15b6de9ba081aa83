// SPDX-License-Identifier: Apache-2.0
//
// Tripartite work-extraction game. Two daemons (slots A, B) measure their
// qubits along a common Pauli axis u; the third daemon (slot C) measures a
// free direction v and shares her outcome. Two conditioning conventions for
// the extracted work are in circulation and both are provided:
//
//   charis     W = 1 - H(C_v | A_u, B_u)
//              the free-direction daemon extracts from her own qubit;
//   axis_pair  W = 1 - max[H(A_u | B_u, C_v), H(B_u | A_u, C_v)]
//              the axis-sharing daemons extract from theirs, and the game
//              is scored by the worse of the two.
//
// Only the axis_pair score obeys the separability bound of 1/3 bit (a pure
// product state aligned with one axis saturates it) while reaching 1 on
// GHZ-class resources and exactly 7/9 on the W state; it is the default for
// the game-level functions. The charis form is kept as the per-setting
// figure of merit work3().

#pragma once

#include <array>
#include <numbers>
#include <vector>

#include "demonwork/entropy.hpp"
#include "demonwork/optimize.hpp"
#include "demonwork/quantum.hpp"
#include "demonwork/work2.hpp"

namespace demonwork {

enum class VMode { single_v, adaptive_v };
enum class Extraction { charis, axis_pair };

namespace detail {

inline double work3_from_dist(const JointDist& d, Extraction extraction) {
  const double h_abc = shannon(d);
  double h_cond = 0.0;
  if (extraction == Extraction::charis) {
    h_cond = h_abc - shannon(marginal(d, {0, 1}));        // H(C|A,B)
  } else {
    const double h_a = h_abc - shannon(marginal(d, {1, 2}));  // H(A|B,C)
    const double h_b = h_abc - shannon(marginal(d, {0, 2}));  // H(B|A,C)
    h_cond = std::max(h_a, h_b);
  }
  double w = 1.0 - h_cond;
  if (w < 0.0 && w > -1e-12) w = 0.0;
  if (w > 1.0 && w < 1.0 + 1e-12) w = 1.0;
  return w;
}

inline double work3_term(const PauliMoments& pm, Axis u, const BlochDir& v,
                         Extraction extraction) {
  const std::array<BlochDir, 3> dirs{BlochDir::unit(u), BlochDir::unit(u), v};
  return work3_from_dist(pm.joint(std::span<const BlochDir>(dirs)), extraction);
}

}  // namespace detail

/// Single-setting work 1 - H(C_v | A_u, B_u), in bits.
inline double work3(const DensityOp& rho, Axis u, const BlochDir& v) {
  if (rho.n != 3) fail("work3: three-qubit state required");
  return detail::work3_from_dist(born_joint_dist(rho, {BlochDir::unit(u), BlochDir::unit(u), v}),
                                 Extraction::charis);
}

struct WorkResult3 {
  struct PerAxis {
    double w = 0.0;
    BlochDir v_used{0, 0, 1};
  };
  std::array<PerAxis, 3> per_axis{};  // indexed by Axis x, y, z
  double average = 0.0;
  VMode mode = VMode::single_v;
  Extraction extraction = Extraction::axis_pair;
};

struct VSearch {
  int grid = 512;
  double tol = 1e-6;
};

/// Axis average with one fixed helper direction v.
inline WorkResult3 avg_work3(const DensityOp& rho, const BlochDir& v,
                             Extraction extraction = Extraction::axis_pair) {
  if (rho.n != 3) fail("avg_work3: three-qubit state required");
  const PauliMoments pm = PauliMoments::from(rho);
  WorkResult3 result;
  result.mode = VMode::single_v;
  result.extraction = extraction;
  double sum = 0.0;
  for (Axis u : {Axis::x, Axis::y, Axis::z}) {
    const double w = detail::work3_term(pm, u, v, extraction);
    result.per_axis[static_cast<int>(u)] = {w, v};
    sum += w;
  }
  result.average = sum / 3.0;
  return result;
}

/// Axis average with the helper direction optimized per axis.
inline WorkResult3 avg_work3_adaptive(const DensityOp& rho,
                                      Extraction extraction = Extraction::axis_pair,
                                      const VSearch& search = {}) {
  if (rho.n != 3) fail("avg_work3_adaptive: three-qubit state required");
  const PauliMoments pm = PauliMoments::from(rho);
  WorkResult3 result;
  result.mode = VMode::adaptive_v;
  result.extraction = extraction;
  double sum = 0.0;
  for (Axis u : {Axis::x, Axis::y, Axis::z}) {
    const DirectionOpt opt = maximize_over_sphere(
        [&](const BlochDir& v) { return detail::work3_term(pm, u, v, extraction); },
        search.grid, search.tol);
    result.per_axis[static_cast<int>(u)] = {opt.value, opt.dir};
    sum += opt.value;
  }
  result.average = sum / 3.0;
  return result;
}

struct MaxWork3 {
  WorkResult3 best;
  bool entanglement_witnessed = false;  // average > 1/3
  bool ghz_class_witnessed = false;     // average > 7/9
};

/// Game value maximized over the helper direction: a single shared v for
/// single_v mode, the per-axis optimum for adaptive_v.
inline MaxWork3 max_work3(const DensityOp& rho, VMode mode,
                          Extraction extraction = Extraction::axis_pair,
                          const VSearch& search = {}) {
  if (rho.n != 3) fail("max_work3: three-qubit state required");
  MaxWork3 out;
  if (mode == VMode::adaptive_v) {
    out.best = avg_work3_adaptive(rho, extraction, search);
  } else {
    const PauliMoments pm = PauliMoments::from(rho);
    const DirectionOpt opt = maximize_over_sphere(
        [&](const BlochDir& v) {
          double sum = 0.0;
          for (Axis u : {Axis::x, Axis::y, Axis::z}) sum += detail::work3_term(pm, u, v, extraction);
          return sum / 3.0;
        },
        search.grid, search.tol);
    out.best = avg_work3(rho, opt.dir, extraction);
  }
  out.entanglement_witnessed = out.best.average > Thresholds::three_sep;
  out.ghz_class_witnessed = out.best.average > Thresholds::three_wclass;
  return out;
}

/// Relabels the qubits so that the designated one takes the helper slot C
/// (index 2); implemented as the transposition (charis <-> 2), so applying
/// it twice with the same index is the identity.
inline DensityOp permute_roles(const DensityOp& rho, int charis) {
  if (charis < 0 || charis >= rho.n) fail("permute_roles: qubit index out of range");
  const int last = rho.n - 1;
  if (charis == last) return rho;
  const auto swapped = [&](int idx) {
    const int b1 = (idx >> (rho.n - 1 - charis)) & 1;
    const int b2 = (idx >> (rho.n - 1 - last)) & 1;
    if (b1 == b2) return idx;
    return idx ^ (1 << (rho.n - 1 - charis)) ^ (1 << (rho.n - 1 - last));
  };
  const int d = dim_of(rho.n);
  Mat out(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) out(swapped(r), swapped(c)) = rho.mat(r, c);
  }
  return DensityOp(rho.n, std::move(out));
}

struct ScanPoint3 {
  double theta = 0.0;   // polar angle of v, from +z
  double phi_az = 0.0;  // azimuth of v, from +x
  double w = 0.0;       // single_v game value at v
};

/// Single-v game value over a (theta, phi_az) grid of helper directions;
/// theta spans [0, pi] inclusive and phi_az spans [0, 2*pi).
inline std::vector<ScanPoint3> direction_scan3(const DensityOp& rho, int n_theta, int n_phi,
                                               Extraction extraction = Extraction::axis_pair) {
  if (rho.n != 3) fail("direction_scan3: three-qubit state required");
  if (n_theta < 2 || n_phi < 2) fail("direction_scan3: grid must be at least 2x2");
  const PauliMoments pm = PauliMoments::from(rho);
  std::vector<ScanPoint3> rows;
  rows.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  for (int it = 0; it < n_theta; ++it) {
    const double theta = std::numbers::pi * it / (n_theta - 1);
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi_az = 2.0 * std::numbers::pi * ip / n_phi;
      const BlochDir v = BlochDir::polar(theta, phi_az);
      double sum = 0.0;
      for (Axis u : {Axis::x, Axis::y, Axis::z}) sum += detail::work3_term(pm, u, v, extraction);
      rows.push_back({theta, phi_az, sum / 3.0});
    }
  }
  return rows;
}

}  // namespace demonwork
