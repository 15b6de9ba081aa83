// SPDX-License-Identifier: Apache-2.0
//
// Resource-state factories and the two noise channels acting on them.

#pragma once

#include <cmath>

#include "demonwork/quantum.hpp"

namespace demonwork {

struct TwoQubitFamilyParams {
  double mu = 1.0;   // mixing parameter in [0, 1]
  double phi = 0.0;  // state unbalance angle, radians

  TwoQubitFamilyParams(double mu_, double phi_) : mu(mu_), phi(phi_) {
    if (mu < 0.0 || mu > 1.0) fail("TwoQubitFamilyParams: mu must lie in [0, 1]");
  }
};

enum class ThreeQubitBase { ghz, ghz_cluster, w };

struct ThreeQubitFamilyParams {
  double mu = 1.0;
  ThreeQubitBase base = ThreeQubitBase::ghz;

  ThreeQubitFamilyParams(double mu_, ThreeQubitBase base_) : mu(mu_), base(base_) {
    if (mu < 0.0 || mu > 1.0) fail("ThreeQubitFamilyParams: mu must lie in [0, 1]");
  }
};

/// cos(phi)|00> + sin(phi)|11>.
inline PureState phi_state(double phi) {
  Vec v = Vec::Zero(4);
  v(0) = std::cos(phi);
  v(3) = std::sin(phi);
  return PureState(2, std::move(v));
}

/// mu |Phi(phi)><Phi(phi)| + (1 - mu)/4 * 1. Implemented as the direct
/// mixture; it coincides with the one-sided Pauli twirl only at phi = pi/4.
inline DensityOp werner_like(double mu, double phi) {
  TwoQubitFamilyParams params(mu, phi);
  const PureState psi = phi_state(phi);
  Mat m = params.mu * (psi.amp * psi.amp.adjoint());
  m += (1.0 - params.mu) / 4.0 * Mat::Identity(4, 4);
  return DensityOp(2, std::move(m));
}

/// (|000> + |111>)/sqrt(2).
inline PureState ghz() {
  Vec v = Vec::Zero(8);
  v(0) = v(7) = 1.0 / std::numbers::sqrt2;
  return PureState(3, std::move(v));
}

/// (|000> - |110> + |011> + |101>)/2 on qubits (A, B, C); local-unitary
/// equivalent of the GHZ state. With the H->0, V->1, path-last label map this
/// is also the lab form (|HH0> - |VV0> + |HV1> + |VH1>)/2.
inline PureState ghz_cluster() {
  Vec v = Vec::Zero(8);
  v(0b000) = 0.5;
  v(0b110) = -0.5;
  v(0b011) = 0.5;
  v(0b101) = 0.5;
  return PureState(3, std::move(v));
}

/// (|001> + |010> + |100>)/sqrt(3); equals the lab form
/// (|HH1> + |HV0> + |VH0>)/sqrt(3) under the same label map.
inline PureState w_state() {
  Vec v = Vec::Zero(8);
  v(0b001) = v(0b010) = v(0b100) = 1.0 / std::sqrt(3.0);
  return PureState(3, std::move(v));
}

inline PureState ghz_cluster_lab() { return ghz_cluster(); }
inline PureState w_state_lab() { return w_state(); }

inline PureState base_state(ThreeQubitBase base) {
  switch (base) {
    case ThreeQubitBase::ghz: return ghz();
    case ThreeQubitBase::ghz_cluster: return ghz_cluster();
    default: return w_state();
  }
}

/// mu |Psi><Psi| + (1 - mu)/8 * 1 for a three-qubit resource |Psi>.
inline DensityOp rho3(double mu, ThreeQubitBase base) {
  ThreeQubitFamilyParams params(mu, base);
  const PureState psi = base_state(base);
  Mat m = params.mu * (psi.amp * psi.amp.adjoint());
  m += (1.0 - params.mu) / 8.0 * Mat::Identity(8, 8);
  return DensityOp(3, std::move(m));
}

namespace detail {

inline Mat one_qubit_op_on(const Mat& op, int qubit, int n) {
  Mat out = qubit == 0 ? op : Mat::Identity(2, 2);
  for (int j = 1; j < n; ++j) out = kron(out, j == qubit ? op : Mat::Identity(2, 2));
  return out;
}

}  // namespace detail

/// (1-p) rho + (p/3) sum_k sigma_k rho sigma_k on the given qubit.
inline DensityOp depolarize_qubit(const DensityOp& rho, int qubit, double p) {
  if (qubit < 0 || qubit >= rho.n) fail("depolarize_qubit: qubit index out of range");
  if (p < 0.0 || p > 1.0) fail("depolarize_qubit: strength must lie in [0, 1]");
  Mat m = (1.0 - p) * rho.mat;
  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    const Mat s = detail::one_qubit_op_on(pauli(a), qubit, rho.n);
    m += (p / 3.0) * (s * rho.mat * s);
  }
  return DensityOp(rho.n, std::move(m));
}

/// Removes all coherences of the given qubit in its computational basis:
/// rho -> (rho + Z rho Z)/2.
inline DensityOp dephase_qubit(const DensityOp& rho, int qubit) {
  if (qubit < 0 || qubit >= rho.n) fail("dephase_qubit: qubit index out of range");
  const Mat z = detail::one_qubit_op_on(pauli(Axis::z), qubit, rho.n);
  return DensityOp(rho.n, 0.5 * (rho.mat + z * rho.mat * z));
}

}  // namespace demonwork
