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

// Reference constructions shared by the test binaries. Everything here is
// written out from first principles and does not call the library routine it
// is used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/LU>

#include "whls/error.hpp"
#include "whls/matcore.hpp"

namespace whls {
namespace testutil {

inline constexpr double kTol = 1e-12;

/// -i(|m><n| - |n><m|) entry by entry.
inline ComplexMatrix ref_j(int d, int m, int n) {
  ComplexMatrix j(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      cplx v = 0.0;
      if (a == m && b == n) v += cplx(0.0, -1.0);
      if (a == n && b == m) v += cplx(0.0, 1.0);
      j(a, b) = v;
    }
  return j;
}

/// Determinant through partial-pivot LU, independent of any eigen-solver.
inline cplx lu_determinant(const ComplexMatrix& m) {
  return Eigen::PartialPivLU<ComplexMatrix>(m).determinant();
}

/// Superoperator assembled from an explicit list of Kraus operators:
/// sum_a A (x) conj(A) in row-stacking convention.
inline ComplexMatrix kraus_superoperator(const std::vector<ComplexMatrix>& ks) {
  const Eigen::Index d = ks.front().rows();
  ComplexMatrix l = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& a : ks)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k)
          for (Eigen::Index m = 0; m < d; ++m)
            l(i * d + j, k * d + m) += a(i, k) * std::conj(a(j, m));
  return l;
}

/// Environment matrix [tr(A_a rho A_b^dagger)]_{a,b} for an explicit Kraus
/// list.
inline ComplexMatrix environment_matrix(const std::vector<ComplexMatrix>& ks,
                                        const ComplexMatrix& rho) {
  const auto n = static_cast<Eigen::Index>(ks.size());
  ComplexMatrix env(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      env(a, b) = (ks[a] * rho * ks[b].adjoint()).trace();
  return env;
}

/// Noisy-channel Kraus list in environment order: sqrt(1-x) I, then
/// sqrt(x/(2(d-1))) J_mn for all (m, n) row-stacked, J_mm = 0.
inline std::vector<ComplexMatrix> noisy_environment_kraus(int d, double x) {
  std::vector<ComplexMatrix> ks;
  ks.push_back(std::sqrt(1.0 - x) * ComplexMatrix::Identity(d, d));
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n)
      ks.push_back(std::sqrt(x / (2.0 * (d - 1))) * ref_j(d, m, n));
  return ks;
}

/// -sum p log2 p over the eigenvalues of a Hermitian matrix computed with
/// Eigen's complex Schur based solver (not the library's Hermitian path).
inline double ref_entropy(const ComplexMatrix& rho) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(rho, false);
  double h = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double p = es.eigenvalues()(i).real();
    if (p > 1e-14) h -= p * std::log2(p);
  }
  return h;
}

inline std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline double max_diff(const std::vector<double>& a,
                       const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline std::vector<double> real_eigenvalues(const ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    out.push_back(es.eigenvalues()(i).real());
  return sorted(out);
}

/// True when f() throws whls::Error carrying the given code.
template <typename F>
bool throws_code(F&& f, ErrorCode code) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace testutil
}  // namespace whls
