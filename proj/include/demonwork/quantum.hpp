// SPDX-License-Identifier: Apache-2.0
//
// Dense quantum primitives for one to three qubits: states, operators,
// measurement directions and Born-rule outcome tables.
//
// Index convention used throughout the library: qubit 0 is the leftmost
// tensor factor, i.e. bit (n-1-j) of a computational-basis index holds the
// state of qubit j, and tensor(A, B) places A on qubit 0. Ket labels map
// H -> 0, V -> 1 with the path label last. Joint-outcome index bit 0 means
// the +1 eigenvalue of the corresponding direction.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace demonwork {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 3;
inline constexpr double kUnitTol = 1e-12;
inline constexpr double kEigTol = -1e-10;
inline constexpr double kProbSumTol = 1e-9;

[[noreturn]] inline void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

inline int dim_of(int n_qubits) { return 1 << n_qubits; }

enum class Axis { x = 0, y = 1, z = 2 };

// ---------------------------------------------------------------------------
// Measurement directions
// ---------------------------------------------------------------------------

/// Unit 3-vector on the single-qubit Bloch sphere.
struct BlochDir {
  double x = 0.0, y = 0.0, z = 1.0;

  BlochDir() = default;
  BlochDir(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
    if (std::abs(x * x + y * y + z * z - 1.0) > 1e-12) {
      fail("BlochDir: vector is not unit length");
    }
  }

  static BlochDir normalized(double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r == 0.0) fail("BlochDir: cannot normalize the zero vector");
    return BlochDir(x / r, y / r, z / r);
  }

  /// Polar angle from +z, azimuth from +x.
  static BlochDir polar(double theta, double phi_az) {
    return BlochDir::normalized(std::sin(theta) * std::cos(phi_az),
                                std::sin(theta) * std::sin(phi_az),
                                std::cos(theta));
  }

  static BlochDir unit(Axis a) {
    switch (a) {
      case Axis::x: return BlochDir(1, 0, 0);
      case Axis::y: return BlochDir(0, 1, 0);
      default: return BlochDir(0, 0, 1);
    }
  }

  double dot(const BlochDir& o) const { return x * o.x + y * o.y + z * o.z; }
  BlochDir operator-() const { return BlochDir(-x, -y, -z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

/// One-parameter family of directions: point(t) sweeps the circle with the
/// given unit normal, starting at `origin` for t = 0.
struct GreatCircle {
  BlochDir normal;
  BlochDir origin;

  GreatCircle(BlochDir normal_, BlochDir origin_)
      : normal(normal_), origin(origin_) {
    if (std::abs(normal.dot(origin)) > 1e-12) {
      fail("GreatCircle: origin must be orthogonal to the normal");
    }
  }

  BlochDir point(double theta) const {
    // tangent = normal x origin, unit length because the pair is orthonormal
    const double tx = normal.y * origin.z - normal.z * origin.y;
    const double ty = normal.z * origin.x - normal.x * origin.z;
    const double tz = normal.x * origin.y - normal.y * origin.x;
    const double c = std::cos(theta), s = std::sin(theta);
    return BlochDir::normalized(c * origin.x + s * tx, c * origin.y + s * ty,
                                c * origin.z + s * tz);
  }

  /// The x-z meridian with t = 0 at +z. This is the circle swept by the
  /// linear-polarization analyzers.
  static GreatCircle xz() {
    return GreatCircle(BlochDir::unit(Axis::y), BlochDir::unit(Axis::z));
  }

  /// Circle of the given normal with a deterministic phase origin.
  static GreatCircle from_normal(const BlochDir& n) {
    const BlochDir ref = std::abs(n.z) < 0.9 ? BlochDir::unit(Axis::z)
                                             : BlochDir::unit(Axis::x);
    const double ox = n.y * ref.z - n.z * ref.y;
    const double oy = n.z * ref.x - n.x * ref.z;
    const double oz = n.x * ref.y - n.y * ref.x;
    return GreatCircle(n, BlochDir::normalized(ox, oy, oz));
  }
};

// ---------------------------------------------------------------------------
// Probability tables
// ---------------------------------------------------------------------------

/// Probability table over k binary variables; entry index bit (k-1-j) is the
/// outcome of variable j (0 = +1 eigenvalue).
struct JointDist {
  int k = 0;
  std::vector<double> p;

  JointDist(int k_, std::vector<double> probs) : k(k_), p(std::move(probs)) {
    if (static_cast<int>(p.size()) != (1 << k)) fail("JointDist: wrong table size");
    double sum = 0.0;
    for (double& v : p) {
      if (v < 0.0) {
        if (v < -1e-12) fail("JointDist: negative probability");
        v = 0.0;
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kProbSumTol) fail("JointDist: probabilities do not sum to 1");
  }
};

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

struct PureState {
  int n = 1;
  Vec amp;

  PureState(int n_, Vec amplitudes) : n(n_), amp(std::move(amplitudes)) {
    if (n < 1 || n > kMaxQubits) fail("PureState: unsupported qubit count");
    if (amp.size() != dim_of(n)) fail("PureState: amplitude vector has wrong length");
    if (std::abs(amp.squaredNorm() - 1.0) > 1e-12) fail("PureState: not normalized");
  }
};

struct DensityOp {
  int n = 1;
  Mat mat;

  DensityOp(int n_, Mat m) : n(n_), mat(std::move(m)) {
    const int d = dim_of(n);
    if (n < 1 || n > kMaxQubits) fail("DensityOp: unsupported qubit count");
    if (mat.rows() != d || mat.cols() != d) fail("DensityOp: wrong matrix size");
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        if (std::abs(mat(r, c) - std::conj(mat(c, r))) > 1e-12) {
          fail("DensityOp: matrix is not Hermitian");
        }
      }
    }
    if (std::abs(mat.trace().real() - 1.0) > 1e-12 || std::abs(mat.trace().imag()) > 1e-12) {
      fail("DensityOp: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(mat, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kEigTol) fail("DensityOp: not positive semidefinite");
  }

  static DensityOp from_pure(const PureState& psi) {
    return DensityOp(psi.n, psi.amp * psi.amp.adjoint());
  }
};

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

inline Mat pauli(Axis a) {
  Mat m(2, 2);
  switch (a) {
    case Axis::x: m << 0, 1, 1, 0; break;
    case Axis::y: m << 0, cx(0, -1), cx(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

/// cos(a) 1 + i sin(a) sigma_y  — a real rotation of the Bloch x-z plane.
inline Mat rotation_y(double alpha) {
  Mat m(2, 2);
  const double c = std::cos(alpha), s = std::sin(alpha);
  m << c, s, -s, c;
  return m;
}

/// Spin projector (1 + outcome n.sigma)/2 for outcome = +1 or -1.
inline Mat projector(const BlochDir& dir, int outcome) {
  if (outcome != 1 && outcome != -1) fail("projector: outcome must be +1 or -1");
  Mat m(2, 2);
  const double o = outcome;
  m << 1.0 + o * dir.z, o * cx(dir.x, -dir.y), o * cx(dir.x, dir.y), 1.0 - o * dir.z;
  return 0.5 * m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Kronecker product; the first operand acts on qubit 0 (leftmost factor).
inline Mat tensor(const Mat& a, const Mat& b) { return kron(a, b); }
inline Mat tensor(const Mat& a, const Mat& b, const Mat& c) { return kron(kron(a, b), c); }

inline PureState tensor(const PureState& a, const PureState& b) {
  if (a.n + b.n > kMaxQubits) fail("tensor: product exceeds the supported qubit count");
  Vec v(a.amp.size() * b.amp.size());
  for (int i = 0; i < a.amp.size(); ++i) {
    v.segment(i * b.amp.size(), b.amp.size()) = a.amp(i) * b.amp;
  }
  return PureState(a.n + b.n, std::move(v));
}

inline PureState tensor(const PureState& a, const PureState& b, const PureState& c) {
  return tensor(tensor(a, b), c);
}

/// Reduced state on the (sorted, nonempty) subset `keep` of qubit indices.
inline DensityOp partial_trace(const DensityOp& rho, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) fail("partial_trace: keep set must be nonempty");
  for (int q : keep) {
    if (q < 0 || q >= rho.n) fail("partial_trace: qubit index out of range");
  }
  std::vector<int> traced;
  for (int q = 0; q < rho.n; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  }
  const int nk = static_cast<int>(keep.size());
  const int nt = static_cast<int>(traced.size());
  const auto compose = [&](int kept_bits, int traced_bits) {
    int idx = 0;
    for (int i = 0; i < nk; ++i) {
      const int bit = (kept_bits >> (nk - 1 - i)) & 1;
      idx |= bit << (rho.n - 1 - keep[i]);
    }
    for (int i = 0; i < nt; ++i) {
      const int bit = (traced_bits >> (nt - 1 - i)) & 1;
      idx |= bit << (rho.n - 1 - traced[i]);
    }
    return idx;
  };
  Mat out = Mat::Zero(dim_of(nk), dim_of(nk));
  for (int r = 0; r < dim_of(nk); ++r) {
    for (int c = 0; c < dim_of(nk); ++c) {
      cx acc = 0;
      for (int t = 0; t < dim_of(nt); ++t) acc += rho.mat(compose(r, t), compose(c, t));
      out(r, c) = acc;
    }
  }
  return DensityOp(nk, std::move(out));
}

/// Outcome distribution of projective measurements along one direction per
/// qubit: p[o] = Tr[rho  (x)_j P(dir_j, o_j)]. Reference implementation.
inline JointDist born_joint_dist(const DensityOp& rho, std::span<const BlochDir> dirs) {
  if (static_cast<int>(dirs.size()) != rho.n) fail("born_joint_dist: one direction per qubit required");
  const int d = dim_of(rho.n);
  std::vector<double> p(d, 0.0);
  for (int o = 0; o < d; ++o) {
    Mat proj = projector(dirs[0], ((o >> (rho.n - 1)) & 1) ? -1 : 1);
    for (int j = 1; j < rho.n; ++j) {
      proj = kron(proj, projector(dirs[j], ((o >> (rho.n - 1 - j)) & 1) ? -1 : 1));
    }
    p[o] = (rho.mat * proj).trace().real();
  }
  return JointDist(rho.n, std::move(p));
}

inline JointDist born_joint_dist(const DensityOp& rho, std::initializer_list<BlochDir> dirs) {
  std::vector<BlochDir> v(dirs);
  return born_joint_dist(rho, std::span<const BlochDir>(v));
}

inline double fidelity_pure(const DensityOp& rho, const PureState& psi) {
  if (rho.n != psi.n) fail("fidelity_pure: dimension mismatch");
  return (psi.amp.adjoint() * rho.mat * psi.amp)(0, 0).real();
}

// ---------------------------------------------------------------------------
// Pauli-moment representation
// ---------------------------------------------------------------------------

/// All expectation values Tr[rho P] for Pauli strings P over {1,X,Y,Z}^n,
/// indexed base-4 with qubit 0 as the most significant digit. Evaluating a
/// Born table from the moments is a small tensor contraction, which keeps
/// the direction scans cheap; equality with born_joint_dist is a tested
/// invariant.
struct PauliMoments {
  int n = 1;
  std::array<double, 64> mom{};

  static PauliMoments from(const DensityOp& rho) {
    PauliMoments pm;
    pm.n = rho.n;
    const int d = dim_of(rho.n);
    const int strings = 1 << (2 * rho.n);  // 4^n
    for (int s = 0; s < strings; ++s) {
      cx acc = 0;
      for (int c = 0; c < d; ++c) {
        cx amp = 1.0;
        int flip = 0;
        for (int j = 0; j < rho.n; ++j) {
          const int digit = (s >> (2 * (rho.n - 1 - j))) & 3;
          const int bit = (c >> (rho.n - 1 - j)) & 1;
          switch (digit) {
            case 0: break;
            case 1: flip |= 1 << (rho.n - 1 - j); break;                      // X
            case 2: flip |= 1 << (rho.n - 1 - j); amp *= bit ? cx(0, -1) : cx(0, 1); break;  // Y
            default: if (bit) amp = -amp; break;                              // Z
          }
        }
        acc += rho.mat(c, c ^ flip) * amp;
      }
      pm.mom[s] = acc.real();
    }
    return pm;
  }

  /// Expectation of (x)_j (w_j[0] 1 + w_j[1] X + w_j[2] Y + w_j[3] Z).
  double contract(std::span<const std::array<double, 4>> w) const {
    const int strings = 1 << (2 * n);
    double e = 0.0;
    for (int s = 0; s < strings; ++s) {
      double coeff = 1.0;
      for (int j = 0; j < n; ++j) coeff *= w[j][(s >> (2 * (n - 1 - j))) & 3];
      if (coeff != 0.0) e += coeff * mom[s];
    }
    return e;
  }

  /// Born table for one direction per qubit; agrees with born_joint_dist.
  JointDist joint(std::span<const BlochDir> dirs) const {
    if (static_cast<int>(dirs.size()) != n) fail("PauliMoments::joint: one direction per qubit required");
    std::array<double, 8> c{};
    const int strings = 1 << (2 * n);
    for (int s = 0; s < strings; ++s) {
      double w = mom[s];
      int pattern = 0;
      for (int j = 0; j < n; ++j) {
        const int digit = (s >> (2 * (n - 1 - j))) & 3;
        if (digit != 0) {
          w *= dirs[j][digit - 1];
          pattern |= 1 << (n - 1 - j);
        }
      }
      c[pattern] += w;
    }
    const int d = dim_of(n);
    std::vector<double> p(d, 0.0);
    for (int o = 0; o < d; ++o) {
      double acc = 0.0;
      for (int pat = 0; pat < d; ++pat) {
        acc += (std::popcount(static_cast<unsigned>(pat & o)) & 1) ? -c[pat] : c[pat];
      }
      p[o] = acc / d;
    }
    return JointDist(n, std::move(p));
  }
};

}  // namespace demonwork
