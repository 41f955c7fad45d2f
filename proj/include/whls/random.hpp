// Copyright 2026 The whls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded random ensembles used by the randomized checks. All draws go through
// std::mt19937_64 so a seed reproduces the same matrices.

#pragma once

#include <cstdint>
#include <random>

#include "whls/matcore.hpp"

namespace whls {

using Rng = std::mt19937_64;

inline ComplexMatrix complex_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      double re = normal(rng);
      double im = normal(rng);
      g(r, c) = cplx(re, im);
    }
  return g;
}

/// G G^dagger / tr(G G^dagger) with G a d x d standard complex Gaussian.
inline ComplexMatrix random_density_matrix(int d, Rng& rng) {
  ComplexMatrix g = complex_gaussian(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

/// Haar-random unit vector.
inline ComplexVector random_pure_state(int d, Rng& rng) {
  ComplexVector v = complex_gaussian(d, 1, rng).col(0);
  return v / v.norm();
}

/// Haar-random unitary: QR of a complex Gaussian with the phases of diag(R)
/// absorbed into Q.
inline ComplexMatrix random_unitary(int d, Rng& rng) {
  ComplexMatrix g = complex_gaussian(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

/// Haar-random real orthogonal matrix: QR of a real Gaussian with the signs
/// of diag(R) absorbed into Q.
inline ComplexMatrix random_orthogonal(int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = normal(rng);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  }
  return q.cast<cplx>();
}

/// Uniform point on the probability simplex (normalized exponentials).
inline std::vector<double> random_probability_vector(int d, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(static_cast<std::size_t>(d));
  double total = 0.0;
  for (double& v : p) {
    v = expo(rng);
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace whls
