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

/**
 * @file algebra.hpp
 * @brief Generator families: the antisymmetric so(d) generators J_mn, the
 *        symmetric operators K_mn completing them to u(d), and spin-j
 *        angular momentum matrices.
 *
 * Ordering is part of the contract. J_mn is listed for m < n and K_mn for
 * m <= n, both lexicographically on (m, n). Spin bases run from m = j down to
 * m = -j, so J_z is diagonal with descending entries.
 */

#pragma once

#include <cmath>
#include <compare>
#include <string>
#include <variant>
#include <vector>

#include "whls/matcore.hpp"

namespace whls {

struct IndexPair {
  int m = 0;
  int n = 0;
  auto operator<=>(const IndexPair&) const = default;
};

enum class Axis { kX, kY, kZ };

inline constexpr const char* axis_name(Axis a) {
  switch (a) {
    case Axis::kX: return "x";
    case Axis::kY: return "y";
    case Axis::kZ: return "z";
  }
  return "?";
}

using GeneratorLabel = std::variant<IndexPair, Axis>;

enum class GeneratorKind { kSoAntisymmetric, kUSymmetric, kSpin };

struct GeneratorSet {
  int d = 0;
  GeneratorKind kind = GeneratorKind::kSoAntisymmetric;
  std::vector<ComplexMatrix> operators;
  std::vector<GeneratorLabel> labels;

  std::size_t size() const { return operators.size(); }
};

/// J_mn = -i(|m><n| - |n><m|). Defined for any m, n; J_nm = -J_mn, J_mm = 0.
inline ComplexMatrix so_generator(int d, int m, int n) {
  ComplexMatrix j = ComplexMatrix::Zero(d, d);
  if (m == n) return j;
  j(m, n) = cplx(0.0, -1.0);
  j(n, m) = cplx(0.0, 1.0);
  return j;
}

/// K_mn = |m><n| + |n><m| for m != n, K_mm = 2|m><m|.
inline ComplexMatrix u_generator(int d, int m, int n) {
  ComplexMatrix k = ComplexMatrix::Zero(d, d);
  if (m == n) {
    k(m, m) = 2.0;
  } else {
    k(m, n) = 1.0;
    k(n, m) = 1.0;
  }
  return k;
}

inline GeneratorSet build_so_generators(int d) {
  if (d < 2) {
    throw Error(ErrorCode::kDimensionTooSmall,
                "so(d) generators need d >= 2, got " + std::to_string(d));
  }
  GeneratorSet g{d, GeneratorKind::kSoAntisymmetric, {}, {}};
  for (int m = 0; m < d; ++m)
    for (int n = m + 1; n < d; ++n) {
      g.operators.push_back(so_generator(d, m, n));
      g.labels.emplace_back(IndexPair{m, n});
    }
  return g;
}

/// The d(d+1)/2 operators K_mn, m <= n. Their completeness relation
/// (1/2) sum_{m,n} K_mn^dagger K_mn = (d+1) I runs over all ordered (m, n),
/// so every off-diagonal member is counted twice there.
inline GeneratorSet build_u_completion(int d) {
  if (d < 2) {
    throw Error(ErrorCode::kDimensionTooSmall,
                "u(d) completion needs d >= 2, got " + std::to_string(d));
  }
  GeneratorSet g{d, GeneratorKind::kUSymmetric, {}, {}};
  for (int m = 0; m < d; ++m)
    for (int n = m; n < d; ++n) {
      g.operators.push_back(u_generator(d, m, n));
      g.labels.emplace_back(IndexPair{m, n});
    }
  return g;
}

/// Spin-j matrices {J_x, J_y, J_z} in the basis |j, j>, |j, j-1>, ..., |j, -j>.
inline GeneratorSet build_spin_generators(double j) {
  double twice = 2.0 * j;
  double rounded = std::round(twice);
  if (!(rounded >= 1.0) || std::abs(twice - rounded) > 1e-12) {
    throw Error(ErrorCode::kInvalidSpin,
                "2j must be a positive integer, got j = " + std::to_string(j));
  }
  const int dim = static_cast<int>(rounded) + 1;
  j = rounded / 2.0;
  ComplexMatrix jz = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix jplus = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    double m = j - k;
    jz(k, k) = m;
    // J+ |j, m> lands on |j, m+1>, which is basis index k-1.
    if (k > 0) jplus(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  ComplexMatrix jminus = jplus.adjoint();
  ComplexMatrix jx = 0.5 * (jplus + jminus);
  ComplexMatrix jy = cplx(0.0, -0.5) * (jplus - jminus);
  return GeneratorSet{dim, GeneratorKind::kSpin, {jx, jy, jz},
                      {Axis::kX, Axis::kY, Axis::kZ}};
}

/// The real antisymmetric spin-1 representation (J_a)_{bc} = -i eps_{abc}.
/// Equal to {J_23, J_31, J_12} of the so(3) family.
inline GeneratorSet cartesian_spin1_generators() {
  const cplx mi(0.0, -1.0);
  ComplexMatrix jx = ComplexMatrix::Zero(3, 3);
  ComplexMatrix jy = ComplexMatrix::Zero(3, 3);
  ComplexMatrix jz = ComplexMatrix::Zero(3, 3);
  jx(1, 2) = mi;
  jx(2, 1) = -mi;
  jy(0, 2) = -mi;
  jy(2, 0) = mi;
  jz(0, 1) = mi;
  jz(1, 0) = -mi;
  return GeneratorSet{3, GeneratorKind::kSpin, {jx, jy, jz},
                      {Axis::kX, Axis::kY, Axis::kZ}};
}

/// Expected [J_kl, J_mn] for the matrices J_ab = -i(|a><b| - |b><a|):
///   -i (d_lm J_kn + d_kn J_lm - d_ln J_km - d_km J_ln).
inline ComplexMatrix so_commutator_expansion(int d, IndexPair a, IndexPair b) {
  const int k = a.m, l = a.n, m = b.m, n = b.n;
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  if (l == m) out += so_generator(d, k, n);
  if (k == n) out += so_generator(d, l, m);
  if (l == n) out -= so_generator(d, k, m);
  if (k == m) out -= so_generator(d, l, n);
  return cplx(0.0, -1.0) * out;
}

/// Largest deviation between every commutator of the set and its
/// structure-constant expansion.
inline double commutator_defect(const GeneratorSet& g) {
  if (g.kind != GeneratorKind::kSoAntisymmetric) {
    throw Error(ErrorCode::kWrongKind,
                "structure constants are defined for so(d) generators only");
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      const auto& pa = std::get<IndexPair>(g.labels[a]);
      const auto& pb = std::get<IndexPair>(g.labels[b]);
      ComplexMatrix comm = g.operators[a] * g.operators[b] -
                           g.operators[b] * g.operators[a];
      worst = std::max(worst,
                       max_abs(comm - so_commutator_expansion(g.d, pa, pb)));
    }
  }
  return worst;
}

inline bool check_commutators(const GeneratorSet& g, double tol = 1e-10) {
  return commutator_defect(g) <= tol;
}

/// sum_k A_k^dagger A_k over a list of operators.
inline ComplexMatrix gram_sum(const std::vector<ComplexMatrix>& ops) {
  ComplexMatrix total = ComplexMatrix::Zero(ops.front().cols(),
                                            ops.front().cols());
  for (const auto& a : ops) total += a.adjoint() * a;
  return total;
}

}  // namespace whls
