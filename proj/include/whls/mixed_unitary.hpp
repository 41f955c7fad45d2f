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
 * @file mixed_unitary.hpp
 * @brief Extremality test and the mixed-unitary form of the even-d SO(d)
 *        Landau-Streater channel.
 *
 * For even d the d(d-1)/2 generators split into d-1 rounds of d/2 pairwise
 * disjoint index pairs (a 1-factorization of K_d). Generators with disjoint
 * pairs multiply to zero, so within one round the discrete Fourier mixtures
 *   U_t = sum_s w^{t s} J_{p_s},   w = exp(2 pi i / (d/2)),
 * are unitary, and
 *   Phi(rho) = 2 / (d (d-1)) sum_{rounds, t} U_t rho U_t^dagger.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "whls/algebra.hpp"
#include "whls/channel.hpp"
#include "whls/matcore.hpp"

namespace whls {

struct OneFactorization {
  int d = 0;
  // Each round lists d/2 pairs (m < n, 0-based), sorted.
  std::vector<std::vector<IndexPair>> rounds;
};

namespace detail {

inline void require_even(int d) {
  if (d < 2) {
    throw Error(ErrorCode::kDimensionTooSmall,
                "dimension must be >= 2, got " + std::to_string(d));
  }
  if (d % 2 != 0) {
    throw Error(ErrorCode::kOddDimension,
                "the pair partition needs an even dimension, got d = " +
                    std::to_string(d));
  }
}

}  // namespace detail

/// Round-robin 1-factorization: round r pairs d-1 with r, and (r+k) with (r-k)
/// mod (d-1) for k = 1 .. d/2-1. Pairs inside a round and the rounds
/// themselves are then sorted lexicographically, which for d = 4 gives
/// {01,23}, {02,13}, {03,12}.
inline OneFactorization one_factorization(int d) {
  detail::require_even(d);
  const int n = d - 1;
  OneFactorization f{d, {}};
  for (int r = 0; r < n; ++r) {
    std::vector<IndexPair> round;
    round.push_back({r, d - 1});
    for (int k = 1; k < d / 2; ++k) {
      int a = (r + k) % n;
      int b = ((r - k) % n + n) % n;
      round.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(round.begin(), round.end());
    f.rounds.push_back(std::move(round));
  }
  std::sort(f.rounds.begin(), f.rounds.end());
  return f;
}

/// Empty string when the factorization is valid, otherwise a description of
/// the first violated invariant.
inline std::string factorization_defect(const OneFactorization& f) {
  const int d = f.d;
  if (static_cast<int>(f.rounds.size()) != d - 1) return "wrong round count";
  std::vector<int> pair_seen(static_cast<std::size_t>(d * d), 0);
  for (std::size_t r = 0; r < f.rounds.size(); ++r) {
    const auto& round = f.rounds[r];
    if (static_cast<int>(round.size()) != d / 2) {
      return "round " + std::to_string(r) + " has wrong size";
    }
    std::vector<int> label_seen(static_cast<std::size_t>(d), 0);
    for (const auto& p : round) {
      if (p.m < 0 || p.n >= d || p.m >= p.n) return "malformed pair";
      ++label_seen[p.m];
      ++label_seen[p.n];
      ++pair_seen[p.m * d + p.n];
    }
    for (int c : label_seen) {
      if (c != 1) return "round " + std::to_string(r) + " repeats a label";
    }
  }
  for (int m = 0; m < d; ++m)
    for (int n = m + 1; n < d; ++n)
      if (pair_seen[m * d + n] != 1) return "pair coverage is not exact";
  return {};
}

struct MixedUnitaryDecomposition {
  std::vector<ComplexMatrix> unitaries;
  std::vector<double> weights;

  std::size_t size() const { return unitaries.size(); }

  ComplexMatrix apply(const ComplexMatrix& rho) const {
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (std::size_t k = 0; k < unitaries.size(); ++k)
      out += weights[k] * unitaries[k] * rho * unitaries[k].adjoint();
    return out;
  }
};

/// The d(d-1)/2 unitaries of the uniform mixture for SO_D_LS, each with
/// weight 2/(d(d-1)). Ordered by round, then by Fourier index t.
inline MixedUnitaryDecomposition unitary_kraus(int d) {
  OneFactorization f = one_factorization(d);
  const int half = d / 2;
  const double weight = 2.0 / (d * (d - 1.0));
  MixedUnitaryDecomposition out;
  for (const auto& round : f.rounds) {
    for (int t = 0; t < half; ++t) {
      ComplexMatrix u = ComplexMatrix::Zero(d, d);
      for (int s = 0; s < half; ++s) {
        // t s reduced mod d/2 keeps the phase exact for the common cases.
        double angle = 2.0 * std::numbers::pi * ((t * s) % half) / half;
        u += std::polar(1.0, angle) *
             so_generator(d, round[s].m, round[s].n);
      }
      out.unitaries.push_back(std::move(u));
      out.weights.push_back(weight);
    }
  }
  return out;
}

/// Identity with weight 1-x followed by the SO_D_LS unitaries with weight
/// 2x/(d(d-1)). Zero-weight members are dropped.
inline MixedUnitaryDecomposition noisy_mixed_unitary(int d, double x) {
  detail::require_even(d);
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::kInvalidSpec,
                "noise parameter x must lie in [0, 1], got " +
                    std::to_string(x));
  }
  MixedUnitaryDecomposition out;
  if (1.0 - x > 0.0) {
    out.unitaries.push_back(ComplexMatrix::Identity(d, d));
    out.weights.push_back(1.0 - x);
  }
  if (x > 0.0) {
    MixedUnitaryDecomposition ls = unitary_kraus(d);
    for (std::size_t k = 0; k < ls.size(); ++k) {
      out.unitaries.push_back(std::move(ls.unitaries[k]));
      out.weights.push_back(x * ls.weights[k]);
    }
  }
  return out;
}

struct ExtremalityResult {
  bool extremal = false;
  int rank = 0;
  int max_rank = 0;
};

/// Rank of {A_m^dagger A_n} with singular values below 1e-9 sigma_max treated
/// as zero; extremal iff the rank equals K^2.
inline ExtremalityResult extremality_test(const KrausSet& k) {
  if (k.operators.empty()) {
    throw Error(ErrorCode::kEmptyKrausSet, "no Kraus operators");
  }
  const auto count = static_cast<Eigen::Index>(k.size());
  const Eigen::Index d = k.input_dim();
  ComplexMatrix rows(count * count, d * d);
  for (Eigen::Index m = 0; m < count; ++m)
    for (Eigen::Index n = 0; n < count; ++n)
      rows.row(m * count + n) =
          vectorize(k.operators[m].adjoint() * k.operators[n]).transpose();

  Eigen::BDCSVD<ComplexMatrix> svd(rows);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? 1e-9 * sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  ExtremalityResult r;
  r.rank = rank;
  r.max_rank = static_cast<int>(count * count);
  r.extremal = r.rank == r.max_rank;
  return r;
}

}  // namespace whls
