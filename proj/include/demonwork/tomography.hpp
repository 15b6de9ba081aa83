// SPDX-License-Identifier: Apache-2.0
//
// State tomography twin: simulated Pauli-basis counts, linear-inversion
// reconstruction, and projection back onto the physical set.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "demonwork/quantum.hpp"
#include "demonwork/rng.hpp"

namespace demonwork {

/// Counts for the complete Pauli-basis settings (3^n of them). Counts are
/// stored as doubles so that exact expected counts can flow through the
/// same reconstruction path as sampled integers.
struct TomographyRecord {
  int n = 0;
  std::vector<std::string> settings;        // e.g. "xz" — one axis letter per qubit
  std::vector<std::vector<double>> counts;  // per setting, 2^n outcome counts
  double duration_s = 0.0;
  double rate_hz = 0.0;
  std::uint64_t seed = 0;
};

inline std::vector<std::string> tomography_settings(int n) {
  std::vector<std::string> out{""};
  for (int j = 0; j < n; ++j) {
    std::vector<std::string> next;
    next.reserve(out.size() * 3);
    for (const std::string& s : out) {
      for (char a : {'x', 'y', 'z'}) next.push_back(s + a);
    }
    out = std::move(next);
  }
  return out;
}

namespace detail {

inline Axis axis_from_char(char c) {
  switch (c) {
    case 'x': return Axis::x;
    case 'y': return Axis::y;
    case 'z': return Axis::z;
    default: fail("tomography: invalid axis letter");
  }
}

inline TomographyRecord tomography_record(const DensityOp& rho, double rate_hz, double duration_s,
                                          std::uint64_t seed, bool sample) {
  if (rate_hz <= 0.0 || duration_s <= 0.0) fail("tomography: rate and duration must be positive");
  TomographyRecord rec;
  rec.n = rho.n;
  rec.settings = tomography_settings(rho.n);
  rec.duration_s = duration_s;
  rec.rate_hz = rate_hz;
  rec.seed = seed;
  rec.counts.reserve(rec.settings.size());
  for (std::size_t s = 0; s < rec.settings.size(); ++s) {
    std::vector<BlochDir> dirs;
    for (char c : rec.settings[s]) dirs.push_back(BlochDir::unit(axis_from_char(c)));
    const JointDist p = born_joint_dist(rho, std::span<const BlochDir>(dirs));
    std::vector<double> row;
    row.reserve(p.p.size());
    if (sample) {
      Rng rng(derive_seed(seed, s + 1));
      for (double prob : p.p) row.push_back(static_cast<double>(rng.poisson(rate_hz * duration_s * prob)));
    } else {
      for (double prob : p.p) row.push_back(rate_hz * duration_s * prob);
    }
    rec.counts.push_back(std::move(row));
  }
  return rec;
}

}  // namespace detail

/// Poisson-sampled tomography record; reproducible per seed.
inline TomographyRecord simulate_tomography(const DensityOp& rho, double rate_hz, double duration_s,
                                            std::uint64_t seed) {
  return detail::tomography_record(rho, rate_hz, duration_s, seed, true);
}

/// Infinite-statistics record: counts are the exact expected values.
inline TomographyRecord expected_tomography(const DensityOp& rho, double rate_hz = 1.0,
                                            double duration_s = 1.0) {
  return detail::tomography_record(rho, rate_hz, duration_s, 0, false);
}

/// Clip-and-redistribute projection onto the physical set: walking the
/// spectrum upward, eigenvalues that would stay negative after sharing the
/// accumulated deficit are zeroed and their mass is spread evenly over the
/// remaining ones (the Frobenius-nearest density matrix for a unit-trace
/// input); the result is renormalized to unit trace.
inline DensityOp project_to_physical(int n, const Mat& hermitian) {
  Mat h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXd ev = es.eigenvalues();  // ascending
  const int d = static_cast<int>(ev.size());
  double deficit = 0.0;
  for (int i = 0; i < d; ++i) {
    const int remaining = d - i;
    if (ev(i) + deficit / remaining < 0.0) {
      deficit += ev(i);
      ev(i) = 0.0;
    } else {
      for (int j = i; j < d; ++j) ev(j) += deficit / remaining;
      break;
    }
  }
  for (int i = 0; i < d; ++i) ev(i) = std::max(0.0, ev(i));
  const double total = ev.sum();
  if (total <= 0.0) fail("project_to_physical: spectrum collapsed to zero");
  ev /= total;
  Mat out = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  return DensityOp(n, std::move(out));
}

/// Linear inversion: every Pauli-string expectation is the average of its
/// estimates over all compatible settings (settings whose axes match the
/// string's support), then rho = 2^-n sum_P <P> P, projected to physical.
inline DensityOp linear_inversion(const TomographyRecord& rec) {
  const int n = rec.n;
  if (n < 1 || n > kMaxQubits) fail("linear_inversion: unsupported qubit count");
  const std::vector<std::string> expected = tomography_settings(n);
  if (rec.settings != expected) fail("linear_inversion: incomplete or misordered basis set");
  const int d = dim_of(n);

  // Outcome frequencies per setting.
  std::vector<std::vector<double>> freq(rec.settings.size());
  for (std::size_t s = 0; s < rec.settings.size(); ++s) {
    if (static_cast<int>(rec.counts[s].size()) != d) fail("linear_inversion: wrong outcome count");
    double total = 0.0;
    for (double c : rec.counts[s]) {
      if (c < 0.0) fail("linear_inversion: negative count");
      total += c;
    }
    if (total <= 0.0) fail("linear_inversion: empty setting");
    freq[s].reserve(d);
    for (double c : rec.counts[s]) freq[s].push_back(c / total);
  }

  const int strings = 1 << (2 * n);  // 4^n Pauli strings, base-4 digits
  std::vector<double> e(strings, 0.0);
  e[0] = 1.0;
  for (int p = 1; p < strings; ++p) {
    double acc = 0.0;
    int used = 0;
    for (std::size_t s = 0; s < rec.settings.size(); ++s) {
      bool compatible = true;
      for (int j = 0; j < n && compatible; ++j) {
        const int digit = (p >> (2 * (n - 1 - j))) & 3;
        if (digit == 0) continue;
        const Axis ax = detail::axis_from_char(rec.settings[s][j]);
        compatible = (static_cast<int>(ax) + 1 == digit);
      }
      if (!compatible) continue;
      double est = 0.0;
      for (int o = 0; o < d; ++o) {
        int sign = 1;
        for (int j = 0; j < n; ++j) {
          const int digit = (p >> (2 * (n - 1 - j))) & 3;
          if (digit != 0 && ((o >> (n - 1 - j)) & 1)) sign = -sign;
        }
        est += sign * freq[s][o];
      }
      acc += est;
      ++used;
    }
    e[p] = acc / used;
  }

  Mat rho = Mat::Zero(d, d);
  for (int p = 0; p < strings; ++p) {
    Mat term = Mat::Identity(1, 1);
    for (int j = 0; j < n; ++j) {
      const int digit = (p >> (2 * (n - 1 - j))) & 3;
      term = kron(term, digit == 0 ? Mat::Identity(2, 2) : pauli(static_cast<Axis>(digit - 1)));
    }
    rho += e[p] * term;
  }
  rho /= d;
  return project_to_physical(n, rho);
}

}  // namespace demonwork
