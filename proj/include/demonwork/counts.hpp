// SPDX-License-Identifier: Apache-2.0
//
// Stochastic twin of the photon-counting measurement pipeline.
//
// Analyzer settings are angles on a great circle of the Bloch sphere; the
// hardware half-waveplate angle maps to a Bloch angle times four, and that
// conversion is the caller's problem — everything here is Bloch angles.
// One detector pair only sees the (+,+) outcome, so the orthogonal outcomes
// are emulated as extra runs with the analyzer at the antipodal setting
// (a 45-degree waveplate step, 180 degrees on the Bloch sphere), four
// independent acquisitions per nominal angle. Counts are drawn as
// independent Poisson variates per outcome, not multinomially at fixed
// total, matching Poissonian rate statistics.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "demonwork/entropy.hpp"
#include "demonwork/quantum.hpp"
#include "demonwork/rng.hpp"
#include "demonwork/work2.hpp"

namespace demonwork {

/// Coincidence counts for one acquisition: one analyzer angle per qubit on
/// a common great circle, one count per joint outcome.
struct CountRecord {
  std::vector<double> settings_rad;  // one analyzer angle per qubit
  std::vector<std::int64_t> counts;  // 2^n joint-outcome counts
  double duration_s = 0.0;
  double rate_hz = 0.0;
  std::uint64_t seed = 0;

  std::int64_t total() const {
    std::int64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
};

/// Counts for the four settings (t,t), (t,t^), (t^,t), (t^,t^), where t^ is
/// the antipodal analyzer setting t + 180deg; they stand in for the four
/// joint outcomes at nominal angle t, and D is their sum.
struct QuadCounts {
  std::int64_t n_pp = 0, n_pm = 0, n_mp = 0, n_mm = 0;
  std::int64_t d() const { return n_pp + n_pm + n_mp + n_mm; }
};

/// Simulates one acquisition: every joint outcome's count is Poisson with
/// mean rate * duration * p(outcome). Reproducible for a fixed seed.
inline CountRecord simulate_counts(const DensityOp& rho, const GreatCircle& circle,
                                   const std::vector<double>& settings_rad, double rate_hz,
                                   double duration_s, std::uint64_t seed) {
  if (static_cast<int>(settings_rad.size()) != rho.n) {
    fail("simulate_counts: one analyzer angle per qubit required");
  }
  if (rate_hz <= 0.0 || duration_s <= 0.0) fail("simulate_counts: rate and duration must be positive");
  std::vector<BlochDir> dirs;
  dirs.reserve(settings_rad.size());
  for (double t : settings_rad) dirs.push_back(circle.point(t));
  const JointDist p = born_joint_dist(rho, std::span<const BlochDir>(dirs));
  CountRecord rec;
  rec.settings_rad = settings_rad;
  rec.duration_s = duration_s;
  rec.rate_hz = rate_hz;
  rec.seed = seed;
  Rng rng(derive_seed(seed, 0));
  rec.counts.reserve(p.p.size());
  for (double prob : p.p) rec.counts.push_back(rng.poisson(rate_hz * duration_s * prob));
  return rec;
}

/// Four single-outcome acquisitions emulating the joint-outcome table at
/// nominal angle theta. Each setting uses its own derived seed stream.
inline QuadCounts measure_quad(const DensityOp& rho, const GreatCircle& circle, double theta,
                               double rate_hz, double duration_s, std::uint64_t seed,
                               std::uint64_t angle_index = 0) {
  if (rho.n != 2) fail("measure_quad: two-qubit state required");
  const double shift = std::numbers::pi;
  const std::array<std::pair<double, double>, 4> settings{
      std::pair{theta, theta}, {theta, theta + shift}, {theta + shift, theta},
      {theta + shift, theta + shift}};
  std::array<std::int64_t, 4> n{};
  for (int s = 0; s < 4; ++s) {
    const CountRecord rec =
        simulate_counts(rho, circle, {settings[s].first, settings[s].second}, rate_hz, duration_s,
                        derive_seed(seed, angle_index, static_cast<std::uint64_t>(s) + 1));
    n[s] = rec.counts[0];  // only the (+,+) outcome is detected
  }
  return QuadCounts{n[0], n[1], n[2], n[3]};
}

struct QuadEstimates {
  double p_ab = 0.0;  // N_pm / D
  double p_a = 0.0;   // (N_pp + N_mp) / D
  double p_b = 0.0;   // (N_pp + N_pm) / D
};

/// Normalized-count estimators exactly as published. Note the label quirk:
/// under the first-index-is-A convention, p_a as defined here equals the
/// canonical marginal of B and vice versa. No correction is applied; use
/// joint_from_counts for the unambiguous route.
inline QuadEstimates quad_estimators(const QuadCounts& q) {
  const double d = static_cast<double>(q.d());
  if (d <= 0.0) fail("quad_estimators: empty quad (D = 0)");
  return QuadEstimates{q.n_pm / d, (q.n_pp + q.n_mp) / d, (q.n_pp + q.n_pm) / d};
}

/// Maximum-likelihood joint frequencies in outcome order (++, +-, -+, --).
inline JointDist joint_from_counts(const QuadCounts& q) {
  const double d = static_cast<double>(q.d());
  if (d <= 0.0) fail("joint_from_counts: empty quad (D = 0)");
  return JointDist(2, {q.n_pp / d, q.n_pm / d, q.n_mp / d, q.n_mm / d});
}

/// First-order Poisson error propagation for the angle-averaged work. The
/// partial derivative of W with respect to one count follows from
/// d p_i / d N_j = (delta_ij - p_i) / D and the entropy gradients; counts at
/// different angles are independent. Zero counts contribute nothing.
inline double sigma_work_propagation(const std::vector<QuadCounts>& quads) {
  const int k = static_cast<int>(quads.size());
  if (k == 0) fail("sigma_work_propagation: no quads");
  double var = 0.0;
  for (const QuadCounts& q : quads) {
    const double d = static_cast<double>(q.d());
    if (d <= 0.0) fail("sigma_work_propagation: empty quad (D = 0)");
    const std::array<double, 4> n{static_cast<double>(q.n_pp), static_cast<double>(q.n_pm),
                                  static_cast<double>(q.n_mp), static_cast<double>(q.n_mm)};
    const std::array<double, 4> p{n[0] / d, n[1] / d, n[2] / d, n[3] / d};
    const double pa0 = p[0] + p[1];  // A outcome +
    const double pb0 = p[0] + p[2];  // B outcome +
    const double h_ab = shannon(std::span<const double>(p));
    const double h_a = binary_entropy(pa0);
    const double h_b = binary_entropy(pb0);
    for (int j = 0; j < 4; ++j) {
      if (n[j] <= 0.0) continue;
      const double dh_ab = -(std::log2(p[j]) + h_ab) / d;
      const double pa = (j < 2) ? pa0 : 1.0 - pa0;
      const double pb = (j % 2 == 0) ? pb0 : 1.0 - pb0;
      const double dh_a = -(std::log2(pa) + h_a) / d;
      const double dh_b = -(std::log2(pb) + h_b) / d;
      const double dw = -dh_ab + 0.5 * (dh_a + dh_b);
      var += dw * dw * n[j];
    }
  }
  return std::sqrt(var) / k;
}

struct ProtocolResult {
  std::vector<double> angles;
  std::vector<QuadCounts> quads;
  std::vector<double> per_angle_w;
  double average = 0.0;
  double sigma_propagation = 0.0;
};

/// Full angle-scan protocol: n_angles nominal angles over [0, 2pi), four
/// acquisitions each, work from the joint frequencies, averaged.
inline ProtocolResult work2_protocol(const DensityOp& rho, const GreatCircle& circle, int n_angles,
                                     double rate_hz, double duration_s, std::uint64_t seed) {
  if (n_angles < 2) fail("work2_protocol: need at least two angles");
  ProtocolResult res;
  res.angles.reserve(n_angles);
  res.quads.reserve(n_angles);
  res.per_angle_w.reserve(n_angles);
  double sum = 0.0;
  for (int i = 0; i < n_angles; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / n_angles;
    const QuadCounts q =
        measure_quad(rho, circle, theta, rate_hz, duration_s, seed, static_cast<std::uint64_t>(i) + 1);
    const double w = work2_from_dist(joint_from_counts(q));
    res.angles.push_back(theta);
    res.quads.push_back(q);
    res.per_angle_w.push_back(w);
    sum += w;
  }
  res.average = sum / n_angles;
  res.sigma_propagation = sigma_work_propagation(res.quads);
  return res;
}

/// Angle-averaged work recomputed from a full set of quads; the statistic
/// used by the Monte Carlo uncertainty engine.
inline double work_from_quads(const std::vector<QuadCounts>& quads) {
  double sum = 0.0;
  for (const QuadCounts& q : quads) sum += work2_from_dist(joint_from_counts(q));
  return sum / static_cast<double>(quads.size());
}

/// Monte Carlo standard deviation of an arbitrary statistic of Poisson
/// counts: every resample redraws each count around the observed value.
/// Deterministic per seed; resample streams are independent.
inline double monte_carlo_sigma(const std::vector<QuadCounts>& observed,
                                const std::function<double(const std::vector<QuadCounts>&)>& statistic,
                                int resamples, std::uint64_t seed) {
  if (resamples < 100) fail("monte_carlo_sigma: need at least 100 resamples");
  std::vector<double> values;
  values.reserve(resamples);
  std::vector<QuadCounts> draw(observed.size());
  for (int r = 0; r < resamples; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r) + 1));
    for (std::size_t i = 0; i < observed.size(); ++i) {
      draw[i].n_pp = rng.poisson(static_cast<double>(observed[i].n_pp));
      draw[i].n_pm = rng.poisson(static_cast<double>(observed[i].n_pm));
      draw[i].n_mp = rng.poisson(static_cast<double>(observed[i].n_mp));
      draw[i].n_mm = rng.poisson(static_cast<double>(observed[i].n_mm));
    }
    values.push_back(statistic(draw));
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= resamples;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return std::sqrt(var / (resamples - 1));
}

/// Monte Carlo sigma for a statistic of generic count vectors around the
/// given means (used by the tomography-based uncertainty estimates).
inline double monte_carlo_sigma_counts(const std::vector<double>& means,
                                       const std::function<double(const std::vector<double>&)>& statistic,
                                       int resamples, std::uint64_t seed) {
  if (resamples < 100) fail("monte_carlo_sigma_counts: need at least 100 resamples");
  std::vector<double> values;
  values.reserve(resamples);
  std::vector<double> draw(means.size());
  for (int r = 0; r < resamples; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r) + 1));
    for (std::size_t i = 0; i < means.size(); ++i) {
      draw[i] = static_cast<double>(rng.poisson(means[i]));
    }
    values.push_back(statistic(draw));
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= resamples;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return std::sqrt(var / (resamples - 1));
}

}  // namespace demonwork
