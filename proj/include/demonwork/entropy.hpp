// SPDX-License-Identifier: Apache-2.0
//
// Shannon-entropy functionals over binary-outcome tables. 0 log 0 = 0 by
// continuity; probabilities below 1e-15 are treated as exact zeros.

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "demonwork/quantum.hpp"

namespace demonwork {

inline constexpr double kZeroProb = 1e-15;

inline double shannon(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > kZeroProb) h -= v * std::log2(v);
  }
  return h;
}

inline double shannon(const JointDist& d) { return shannon(std::span<const double>(d.p)); }

inline double binary_entropy(double p) {
  double h = 0.0;
  if (p > kZeroProb) h -= p * std::log2(p);
  if (1.0 - p > kZeroProb) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

/// Marginal over the given variable indices, in the order listed.
inline JointDist marginal(const JointDist& d, std::span<const int> keep) {
  const int m = static_cast<int>(keep.size());
  for (int v : keep) {
    if (v < 0 || v >= d.k) fail("marginal: variable index out of range");
  }
  std::vector<double> out(1 << m, 0.0);
  for (int idx = 0; idx < (1 << d.k); ++idx) {
    int o = 0;
    for (int i = 0; i < m; ++i) {
      o |= ((idx >> (d.k - 1 - keep[i])) & 1) << (m - 1 - i);
    }
    out[o] += d.p[idx];
  }
  return JointDist(m, std::move(out));
}

inline JointDist marginal(const JointDist& d, std::initializer_list<int> keep) {
  std::vector<int> v(keep);
  return marginal(d, std::span<const int>(v));
}

/// H(target | given) = H(target, given) - H(given).
inline double conditional_entropy(const JointDist& d, int target, std::span<const int> given) {
  if (target < 0 || target >= d.k) fail("conditional_entropy: target out of range");
  std::vector<int> joint_vars{target};
  for (int g : given) {
    if (g == target) fail("conditional_entropy: target and given sets must be disjoint");
    joint_vars.push_back(g);
  }
  const double h_joint = shannon(marginal(d, std::span<const int>(joint_vars)));
  std::vector<int> gv(given.begin(), given.end());
  const double h_given = gv.empty() ? 0.0 : shannon(marginal(d, std::span<const int>(gv)));
  return h_joint - h_given;
}

inline double conditional_entropy(const JointDist& d, int target, std::initializer_list<int> given) {
  std::vector<int> g(given);
  return conditional_entropy(d, target, std::span<const int>(g));
}

}  // namespace demonwork
