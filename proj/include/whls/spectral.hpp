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
 * @file spectral.hpp
 * @brief Superoperator, eigen-decomposition on the X/Y/Z/I operator basis,
 *        determinant and the infinitesimal-divisibility test of the noisy
 *        channel.
 *
 * Operator basis (0-based, i < j):
 *   X_ij = E_ij + E_ji        eigenvalue 1 - x d/(d-1)      d(d-1)/2 of them
 *   Y_ij = E_ij - E_ji        eigenvalue 1 - x (d-2)/(d-1)  d(d-1)/2
 *   Z_i  = E_ii - E_i+1,i+1   eigenvalue 1 - x d/(d-1)      d-1
 *   I                         eigenvalue 1                   1
 * A negative determinant rules out infinitesimal divisibility.
 */

#pragma once

#include <cmath>
#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Eigenvalues>

#include "whls/channel.hpp"
#include "whls/matcore.hpp"

namespace whls {

/// d^2 x d^2 matrix L with L vectorize(rho) = vectorize(apply(spec, rho)).
inline ComplexMatrix superoperator(const ChannelSpec& spec) {
  spec.validate();
  const int d = spec.d;
  ComplexMatrix l(d * d, d * d);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      l.col(p * d + q) = vectorize(whls::apply(spec, unit_matrix(d, p, q)));
  return l;
}

enum class BasisClass { kX, kY, kZ, kIdentity };

inline constexpr std::string_view basis_class_name(BasisClass c) {
  switch (c) {
    case BasisClass::kX: return "X";
    case BasisClass::kY: return "Y";
    case BasisClass::kZ: return "Z";
    case BasisClass::kIdentity: return "I";
  }
  return "?";
}

struct ChannelSpectrumEntry {
  double eigenvalue = 0.0;
  int multiplicity = 0;
  BasisClass basis_class = BasisClass::kIdentity;
};

struct ChannelSpectrum {
  std::vector<ChannelSpectrumEntry> entries;

  int total_multiplicity() const {
    int total = 0;
    for (const auto& e : entries) total += e.multiplicity;
    return total;
  }

  std::vector<double> expanded() const {
    std::vector<double> out;
    for (const auto& e : entries)
      out.insert(out.end(), static_cast<std::size_t>(e.multiplicity),
                 e.eigenvalue);
    return out;
  }
};

/// The basis operator of a class; (i, j) with i < j for X and Y, i alone for
/// Z (0 <= i < d-1), ignored for the identity.
inline ComplexMatrix spectral_basis_operator(int d, BasisClass c, int i = 0,
                                             int j = 0) {
  switch (c) {
    case BasisClass::kX: return unit_matrix(d, i, j) + unit_matrix(d, j, i);
    case BasisClass::kY: return unit_matrix(d, i, j) - unit_matrix(d, j, i);
    case BasisClass::kZ:
      return unit_matrix(d, i, i) - unit_matrix(d, i + 1, i + 1);
    case BasisClass::kIdentity: return ComplexMatrix::Identity(d, d);
  }
  return ComplexMatrix::Zero(d, d);
}

namespace detail {

inline void require_noisy_spectral(const ChannelSpec& spec, const char* op) {
  spec.validate();
  if (spec.family != Family::kNoisySoLs) {
    throw Error(ErrorCode::kUnsupportedFamily,
                std::string(op) + " is defined for NOISY_SO_D_LS, got " +
                    std::string(family_name(spec.family)));
  }
}

// 1 - x d/(d-1), written so that x = (d-1)/d gives an exact zero.
inline double symmetric_eigenvalue(int d, double x) {
  return (d - 1.0 - x * d) / (d - 1.0);
}

inline double antisymmetric_eigenvalue(int d, double x) {
  return (d - 1.0 - x * (d - 2.0)) / (d - 1.0);
}

inline double int_power(double base, long long exponent) {
  double result = 1.0;
  for (long long k = 0; k < exponent; ++k) result *= base;
  return result;
}

}  // namespace detail

inline ChannelSpectrum channel_spectrum(const ChannelSpec& spec) {
  detail::require_noisy_spectral(spec, "channel_spectrum");
  const int d = spec.d;
  const double sym = detail::symmetric_eigenvalue(d, spec.x);
  const double anti = detail::antisymmetric_eigenvalue(d, spec.x);
  ChannelSpectrum s;
  s.entries.push_back({sym, d * (d - 1) / 2, BasisClass::kX});
  s.entries.push_back({anti, d * (d - 1) / 2, BasisClass::kY});
  s.entries.push_back({sym, d - 1, BasisClass::kZ});
  s.entries.push_back({1.0, 1, BasisClass::kIdentity});
  return s;
}

/// (d+2)(d-1)/2, the power carried by the X/Z eigenvalue in the determinant.
inline long long symmetric_exponent(int d) {
  return static_cast<long long>(d + 2) * (d - 1) / 2;
}

inline bool dimension_allows_negative_determinant(int d) {
  return symmetric_exponent(d) % 2 == 1;
}

struct DivisibilityVerdict {
  double determinant = 1.0;
  bool not_infinitesimally_divisible = false;
  double condition_x = 0.0;        // (d-1)/d
  bool condition_dimension = false;  // (d+2)(d-1)/2 odd
};

inline DivisibilityVerdict determinant(const ChannelSpec& spec) {
  detail::require_noisy_spectral(spec, "determinant");
  const int d = spec.d;
  DivisibilityVerdict v;
  v.determinant =
      detail::int_power(detail::symmetric_eigenvalue(d, spec.x),
                        symmetric_exponent(d)) *
      detail::int_power(detail::antisymmetric_eigenvalue(d, spec.x),
                        static_cast<long long>(d) * (d - 1) / 2);
  v.condition_x = (d - 1.0) / d;
  v.condition_dimension = dimension_allows_negative_determinant(d);
  v.not_infinitesimally_divisible = v.determinant < 0.0;
  return v;
}

/// Eigenvalues of the superoperator, unsorted.
inline std::vector<cplx> superoperator_eigenvalues(const ChannelSpec& spec) {
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(superoperator(spec),
                                                  /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotSquare, "superoperator eigensolver failed");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Determinant of the superoperator as the product of its eigenvalues.
/// Requires a real spectrum (imaginary parts below 1e-10); eigenvalues below
/// 1e-12 in magnitude count as zero.
inline double superoperator_determinant(const ChannelSpec& spec) {
  double det = 1.0;
  for (cplx lambda : superoperator_eigenvalues(spec)) {
    if (std::abs(lambda.imag()) > 1e-10) {
      throw Error(ErrorCode::kNotHermitian,
                  "superoperator has a complex eigenvalue");
    }
    double re = lambda.real();
    det *= std::abs(re) < kZeroEigenvalue ? 0.0 : re;
  }
  return det;
}

}  // namespace whls
