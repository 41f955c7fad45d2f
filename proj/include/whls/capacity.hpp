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
 * @file capacity.hpp
 * @brief One-shot classical, entanglement-assisted and coherent-information
 *        quantities of the noisy SO(d) channel, in bits.
 *
 * Closed forms are paired with numerical counterparts that build the output
 * and complement matrices explicitly and take their entropies.
 */

#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "whls/channel.hpp"
#include "whls/complement.hpp"
#include "whls/matcore.hpp"

namespace whls {

namespace detail {

inline void require_point(int d, double x) {
  ChannelSpec::noisy(d, x).validate();
}

}  // namespace detail

/// |psi> = (cos(theta) e^{i phi}, sin(theta), 0, ..., 0).
inline ComplexVector two_level_state(int d, double theta, double phi) {
  ComplexVector psi = ComplexVector::Zero(d);
  psi(0) = std::polar(std::cos(theta), phi);
  psi(1) = std::sin(theta);
  return psi;
}

/// Upper-left 2x2 block M of Phi_x(|psi><psi|) for two_level_state(theta,
/// phi). The remaining d-2 diagonal entries equal x/(d-1).
inline ComplexMatrix output_block(int d, double x, double theta, double phi) {
  detail::require_point(d, x);
  const double c = std::cos(theta), s = std::sin(theta);
  const double q = x / (d - 1.0);
  const cplx e = std::polar(1.0, phi);
  ComplexMatrix m(2, 2);
  m(0, 0) = (1.0 - x) * c * c + q * s * s;
  m(1, 1) = (1.0 - x) * s * s + q * c * c;
  m(0, 1) = c * s * ((1.0 - x) * e - q * std::conj(e));
  m(1, 0) = std::conj(m(0, 1));
  return m;
}

/// det M = x (1-x)/(d-1) [cos^4 + sin^4 + 2 cos^2 sin^2 cos(2 phi)].
inline double output_block_determinant(int d, double x, double theta,
                                       double phi) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  return x * (1.0 - x) / (d - 1.0) *
         (c2 * c2 + s2 * s2 + 2.0 * c2 * s2 * std::cos(2.0 * phi));
}

struct MinOutputState {
  double theta = std::numbers::pi / 4;
  double phi = std::numbers::pi / 2;
  Spectrum output_spectrum;
};

/// theta = pi/4, phi = pi/2, i.e. |psi> = (i, 1, 0, ..., 0)/sqrt(2), with
/// output spectrum {x/(d-1) (d-2 times), 0, 1 - x + x/(d-1)}.
inline MinOutputState min_output_entropy_state(int d, double x) {
  detail::require_point(d, x);
  std::vector<double> values(static_cast<std::size_t>(d - 2), x / (d - 1.0));
  values.push_back(0.0);
  values.push_back(1.0 - x + x / (d - 1.0));
  MinOutputState s;
  s.output_spectrum = group_eigenvalues(std::move(values));
  return s;
}

inline double min_output_entropy(int d, double x) {
  auto values = min_output_entropy_state(d, x).output_spectrum.expanded();
  return shannon_entropy_bits(values);
}

/// log2 d + (d-2) q log2 q + (1 - x + q) log2(1 - x + q), q = x/(d-1).
inline double classical_capacity_one_shot(int d, double x) {
  detail::require_point(d, x);
  const double q = x / (d - 1.0);
  return std::log2(static_cast<double>(d)) + (d - 2) * xlog2x(q) +
         xlog2x(1.0 - x + q);
}

/// log2 d - S(Phi_x(|psi><psi|)) with the minimizing input pushed through
/// the channel.
inline double classical_capacity_one_shot_numeric(int d, double x) {
  auto spec = ChannelSpec::noisy(d, x);
  MinOutputState s = min_output_entropy_state(d, x);
  ComplexVector psi = two_level_state(d, s.theta, s.phi);
  ComplexMatrix out = whls::apply(spec, psi * psi.adjoint());
  return std::log2(static_cast<double>(d)) - von_neumann_entropy(out);
}

/// I(X:Y) for the joint law P(i, j) = (1 - delta_ij)/(d (d-1)).
inline double classical_mutual_information_check(int d) {
  if (d < 2) {
    throw Error(ErrorCode::kDimensionTooSmall,
                "dimension must be >= 2, got " + std::to_string(d));
  }
  std::vector<double> joint;
  std::vector<double> px(static_cast<std::size_t>(d), 0.0);
  std::vector<double> py(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double p = i == j ? 0.0 : 1.0 / (d * (d - 1.0));
      joint.push_back(p);
      px[i] += p;
      py[j] += p;
    }
  return shannon_entropy_bits(px) + shannon_entropy_bits(py) -
         shannon_entropy_bits(joint);
}

/// 2 log2 d + (1-x) log2(1-x) + x log2(2x/(d(d-1))).
inline double entanglement_assisted_capacity(int d, double x) {
  detail::require_point(d, x);
  const double term =
      x > 0.0 ? x * std::log2(2.0 * x / (d * (d - 1.0))) : 0.0;
  return 2.0 * std::log2(static_cast<double>(d)) + xlog2x(1.0 - x) + term;
}

/// 2 log2 d - S(Phi_x^c(I/d)).
inline double entanglement_assisted_capacity_numeric(int d, double x) {
  auto spec = ChannelSpec::noisy(d, x);
  ComplexMatrix mixed = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  return 2.0 * std::log2(static_cast<double>(d)) -
         von_neumann_entropy(complement_apply(spec, mixed).matrix);
}

namespace detail {

inline void require_probability_vector(int d, std::span<const double> r) {
  if (static_cast<int>(r.size()) != d) {
    throw Error(ErrorCode::kNotAProbabilityVector,
                "expected " + std::to_string(d) + " entries, got " +
                    std::to_string(r.size()));
  }
  double total = 0.0;
  for (double v : r) {
    if (!(v >= 0.0)) {
      throw Error(ErrorCode::kNotAProbabilityVector, "negative entry");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kTraceTol) {
    throw Error(ErrorCode::kNotAProbabilityVector,
                "entries sum to " + std::to_string(total));
  }
}

}  // namespace detail

/// Output eigenvalues lambda_i = (1-x) r_i + x (1 - r_i)/(d-1) for
/// rho = diag(r).
inline std::vector<double> diagonal_output_eigenvalues(
    int d, double x, std::span<const double> r) {
  std::vector<double> lambda;
  lambda.reserve(r.size());
  for (double ri : r)
    lambda.push_back((1.0 - x) * ri + x * (1.0 - ri) / (d - 1.0));
  return lambda;
}

/// J(diag(r), Phi_x) = S(Phi_x(rho)) - S(Phi_x^c(rho)) from the closed
/// spectra.
inline double coherent_information_diagonal(int d, double x,
                                            std::span<const double> r) {
  detail::require_point(d, x);
  detail::require_probability_vector(d, r);
  auto out = diagonal_output_eigenvalues(d, x, r);
  auto env = complement_diagonal_eigenvalues(d, x, r);
  return shannon_entropy_bits(out) - shannon_entropy_bits(env);
}

inline double coherent_information_uniform(int d, double x) {
  std::vector<double> r(static_cast<std::size_t>(d), 1.0 / d);
  return coherent_information_diagonal(d, x, r);
}

/// Closed expression for J at rho_n = (1/n) sum_{i<n} |i><i|, logs base 2:
///   -A log2(A/n) + ((n-1)/(d-1)) x log2(x/(d-1)) + (1-x) log2(1-x)
///   - x log2 n + x (n-1)/(d-1),           A = (1-x) + x (n-1)/(d-1).
/// The last term is the x (n-1)/(d-1) log2 2 contribution of the
/// complement eigenvalues 2x/(n(d-1)).
inline double coherent_information_rank(int d, double x, int n) {
  detail::require_point(d, x);
  if (n < 1 || n > d) {
    throw Error(ErrorCode::kInvalidSpec,
                "rank must lie in [1, d], got " + std::to_string(n));
  }
  const double a = (1.0 - x) + x * (n - 1.0) / (d - 1.0);
  const double log_n = std::log2(static_cast<double>(n));
  const double xlogq = x > 0.0 ? x * std::log2(x / (d - 1.0)) : 0.0;
  return -(xlog2x(a) - a * log_n) + (n - 1.0) / (d - 1.0) * xlogq +
         xlog2x(1.0 - x) - x * log_n + x * (n - 1.0) / (d - 1.0);
}

/// S(Phi(rho)) - S(Phi^c(rho)) from the explicitly built output and
/// complement matrices.
inline double coherent_information(const ChannelSpec& spec,
                                   const ComplexMatrix& rho) {
  ComplexMatrix out = whls::apply(spec, rho);
  ComplexMatrix env = complement_apply(spec, rho).matrix;
  return von_neumann_entropy(out) - von_neumann_entropy(env);
}

/// f(x) = (1-x) log2(d (1-x)) + x (1 + log2(x/(d-1))), the coherent
/// information at the maximally mixed input.
inline double critical_function(int d, double x) {
  double value = 0.0;
  if (x < 1.0) value += (1.0 - x) * std::log2(d * (1.0 - x));
  if (x > 0.0) value += x * (1.0 + std::log2(x / (d - 1.0)));
  return value;
}

inline constexpr double kCriticalLower = 1e-6;
inline constexpr double kCriticalUpper = 1.0 - 1e-6;
inline constexpr double kCriticalTol = 1e-9;

/// Root of critical_function by bisection on [1e-6, 1 - 1e-6], interval
/// width 1e-9. Throws NoSignChange when the endpoints do not bracket a sign
/// change or when f fails to stay positive on the grid k/1000 below the root.
inline double critical_x(int d) {
  if (d < 2) {
    throw Error(ErrorCode::kDimensionTooSmall,
                "dimension must be >= 2, got " + std::to_string(d));
  }
  double lo = kCriticalLower, hi = kCriticalUpper;
  double f_lo = critical_function(d, lo);
  double f_hi = critical_function(d, hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "no sign change for d = %d: f(%g) = %.6g, f(%g) = %.6g", d,
                  lo, f_lo, hi, f_hi);
    throw Error(ErrorCode::kNoSignChange, buf);
  }
  while (hi - lo > kCriticalTol) {
    double mid = 0.5 * (lo + hi);
    if (critical_function(d, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double root = 0.5 * (lo + hi);
  for (int k = 0; k < 1000; ++k) {
    double x = k / 1000.0;
    if (x >= root - kCriticalTol) break;
    if (!(critical_function(d, x) > 0.0)) {
      throw Error(ErrorCode::kNoSignChange,
                  "f is not positive below the bracketed root for d = " +
                      std::to_string(d));
    }
  }
  return root;
}

struct CapacityReport {
  int d = 0;
  double x = 0.0;
  double c1 = 0.0;
  double c_ea = 0.0;
  double j_coherent_mixed = 0.0;
  std::optional<double> x0;
};

inline CapacityReport capacity_report(int d, double x,
                                      bool with_critical = false) {
  CapacityReport r;
  r.d = d;
  r.x = x;
  r.c1 = classical_capacity_one_shot(d, x);
  r.c_ea = entanglement_assisted_capacity(d, x);
  r.j_coherent_mixed = coherent_information_uniform(d, x);
  if (with_critical) r.x0 = critical_x(d);
  return r;
}

}  // namespace whls
