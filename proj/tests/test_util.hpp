// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the test suites: seeded random states and directions.

#pragma once

#include "demonwork/quantum.hpp"
#include "demonwork/rng.hpp"

namespace dwtest {

using namespace demonwork;

inline BlochDir random_dir(Rng& rng) {
  double x = 0, y = 0, z = 0, r = 0;
  do {
    x = rng.normal();
    y = rng.normal();
    z = rng.normal();
    r = std::sqrt(x * x + y * y + z * z);
  } while (r < 1e-6);
  return BlochDir::normalized(x, y, z);
}

inline PureState random_pure(int n, Rng& rng) {
  Vec v(dim_of(n));
  for (int i = 0; i < v.size(); ++i) v(i) = cx(rng.normal(), rng.normal());
  v /= v.norm();
  return PureState(n, std::move(v));
}

/// Ginibre-ensemble density matrix.
inline DensityOp random_density(int n, Rng& rng) {
  const int d = dim_of(n);
  Mat g(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) g(r, c) = cx(rng.normal(), rng.normal());
  }
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityOp(n, std::move(rho));
}

inline PureState random_product_pure(int n, Rng& rng) {
  PureState out = random_pure(1, rng);
  for (int j = 1; j < n; ++j) out = tensor(out, random_pure(1, rng));
  return out;
}

/// Random convex combination of product density matrices (separable).
inline DensityOp random_separable(int n, int terms, Rng& rng) {
  const int d = dim_of(n);
  Mat m = Mat::Zero(d, d);
  std::vector<double> w(terms);
  double total = 0.0;
  for (double& x : w) {
    x = rng.uniform() + 1e-3;
    total += x;
  }
  for (int t = 0; t < terms; ++t) {
    Mat term = random_density(1, rng).mat;
    for (int j = 1; j < n; ++j) term = kron(term, random_density(1, rng).mat);
    m += (w[t] / total) * term;
  }
  m = 0.5 * (m + m.adjoint());
  return DensityOp(n, std::move(m));
}

}  // namespace dwtest
