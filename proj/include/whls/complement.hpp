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
 * @file complement.hpp
 * @brief Complementary channel of the noisy SO(d) Landau-Streater channel.
 *
 * The environment has dimension d^2 + 1 with basis |0> (paired with the
 * identity Kraus operator A_0) followed by |m, n> for all m, n in row-stacking
 * order, environment index 1 + m d + n. Diagonal labels |m, m> pair with
 * J_mm = 0 and so carry no weight, but keep the environment a full
 * 1 + d^2 block.
 *
 * Entries are [Phi^c(rho)]_{a,b} = tr(A_a rho A_b^dagger):
 *   (0, 0)    (1 - x) tr(rho)
 *   (0, mn)   i c (rho_mn - rho_nm),      c = sqrt(x (1 - x) / (2 (d - 1)))
 *   (mn, 0)   i c (rho_mn - rho_nm)
 *   (mn, pq)  x / (2 (d - 1)) [(I - S)(I (x) rho + rho (x) I)]_{mn, pq}
 */

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "whls/channel.hpp"
#include "whls/matcore.hpp"

namespace whls {

struct ComplementOutput {
  ComplexMatrix matrix;
  // Size of the leading block V0 (the identity-operator environment state).
  int corner_size = 1;
};

namespace detail {

inline void require_noisy(const ChannelSpec& spec, const char* op) {
  spec.validate();
  if (spec.family != Family::kNoisySoLs) {
    throw Error(ErrorCode::kUnsupportedFamily,
                std::string(op) + " is defined for NOISY_SO_D_LS, got " +
                    std::string(family_name(spec.family)));
  }
}

}  // namespace detail

/// (R_i)_{a, j} = (A_a)_{i, j}: row i of every Kraus operator, stacked in
/// environment order. Returns d operators of shape (d^2 + 1) x d.
inline KrausSet complement_kraus(const ChannelSpec& spec) {
  detail::require_noisy(spec, "complement_kraus");
  const int d = spec.d;
  const int env = d * d + 1;
  // Environment-ordered Kraus list, diagonal (zero) members included.
  std::vector<ComplexMatrix> a;
  a.reserve(static_cast<std::size_t>(env));
  a.push_back(std::sqrt(1.0 - spec.x) * ComplexMatrix::Identity(d, d));
  const double w = std::sqrt(spec.x / (2.0 * (d - 1.0)));
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) a.push_back(w * so_generator(d, m, n));

  KrausSet r;
  for (int i = 0; i < d; ++i) {
    ComplexMatrix ri(env, d);
    for (int alpha = 0; alpha < env; ++alpha) ri.row(alpha) = a[alpha].row(i);
    r.operators.push_back(std::move(ri));
    r.labels.push_back({KrausLabel::Kind::kRow, {i, i}, Axis::kX});
  }
  return r;
}

/// Closed block form of Phi_x^c(rho).
inline ComplementOutput complement_apply(const ChannelSpec& spec,
                                         const ComplexMatrix& rho) {
  detail::require_noisy(spec, "complement_apply");
  require_input(spec, rho);
  const int d = spec.d;
  const double x = spec.x;
  const int env = d * d + 1;
  const double c_off = std::sqrt(x * (1.0 - x) / (2.0 * (d - 1.0)));
  const double c_low = x / (2.0 * (d - 1.0));
  const cplx i_unit(0.0, 1.0);

  ComplexMatrix out = ComplexMatrix::Zero(env, env);
  out(0, 0) = (1.0 - x) * rho.trace();
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      const int mn = 1 + m * d + n;
      cplx v = i_unit * c_off * (rho(m, n) - rho(n, m));
      out(0, mn) = v;
      out(mn, 0) = v;
    }
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      const int mn = 1 + m * d + n;
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
          cplx v = 0.0;
          if (m == p) v += rho(n, q);
          if (n == p) v -= rho(m, q);
          if (m == q) v -= rho(n, p);
          if (n == q) v += rho(m, p);
          if (v != 0.0) out(mn, 1 + p * d + q) = c_low * v;
        }
    }
  return {std::move(out), 1};
}

/// Phi_x^c(rho) evaluated from complement_kraus(); the oracle for the block
/// form.
inline ComplexMatrix complement_apply_kraus(const ChannelSpec& spec,
                                            const ComplexMatrix& rho) {
  return apply_kraus(complement_kraus(spec), rho);
}

/// Closed-form spectrum of Phi_x^c(I/d): 1 - x once, 0 with multiplicity
/// d(d+1)/2 (symmetric vectors), 2x/(d(d-1)) with multiplicity d(d-1)/2
/// (antisymmetric vectors).
inline Spectrum complement_spectrum_maximally_mixed(const ChannelSpec& spec) {
  detail::require_noisy(spec, "complement_spectrum_maximally_mixed");
  const int d = spec.d;
  std::vector<double> values;
  values.push_back(1.0 - spec.x);
  values.insert(values.end(), static_cast<std::size_t>(d * (d + 1) / 2), 0.0);
  values.insert(values.end(), static_cast<std::size_t>(d * (d - 1) / 2),
                2.0 * spec.x / (d * (d - 1.0)));
  return group_eigenvalues(std::move(values));
}

/// Closed-form spectrum of Phi_x^c(diag(r)): (1 - x) tr, x (r_i + r_j)/(d - 1)
/// for each i < j, and d(d+1)/2 zeros.
inline std::vector<double> complement_diagonal_eigenvalues(
    int d, double x, std::span<const double> r) {
  if (static_cast<int>(r.size()) != d) {
    throw Error(ErrorCode::kDimensionMismatch, "diagonal has wrong length");
  }
  double tr = 0.0;
  for (double v : r) tr += v;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(d * d + 1));
  values.push_back((1.0 - x) * tr);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      values.push_back(x * (r[i] + r[j]) / (d - 1.0));
  values.insert(values.end(), static_cast<std::size_t>(d * (d + 1) / 2), 0.0);
  return values;
}

}  // namespace whls
