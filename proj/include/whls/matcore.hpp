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
 * @file matcore.hpp
 * @brief Dense complex matrix primitives shared by every other header.
 *
 * Vectorization convention: row stacking. The d x d matrix m maps to the
 * column vector whose component at flat index (r * d + c) is m(r, c), i.e.
 * |m> = sum_{r,c} m_{rc} |r, c>. The swap operator, superoperators and the
 * complementary-channel block matrix are all expressed in this basis.
 *
 * Indices are 0-based throughout the library; user-facing output converts to
 * 1-based labels.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "whls/error.hpp"

namespace whls {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kNegativeEigenvalueTol = 1e-10;
// Eigenvalues below this magnitude count as exact zeros in entropies and
// determinant products.
inline constexpr double kZeroEigenvalue = 1e-12;
// Consecutive eigenvalues closer than this (relative to max(1, |lambda|)) are
// reported as one degenerate level.
inline constexpr double kDegeneracyTol = 1e-9;

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot compare " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " with " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  return max_abs(a - b);
}

inline double hermiticity_defect(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

/// Eigenvalues grouped into degenerate levels, sorted descending.
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<int> multiplicities;

  int dimension() const {
    int total = 0;
    for (int g : multiplicities) total += g;
    return total;
  }

  /// Every eigenvalue repeated by its multiplicity, descending.
  std::vector<double> expanded() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(dimension()));
    for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
      out.insert(out.end(), static_cast<std::size_t>(multiplicities[k]),
                 eigenvalues[k]);
    }
    return out;
  }
};

/// Groups a list of eigenvalues (any order) into a descending Spectrum.
inline Spectrum group_eigenvalues(std::vector<double> values,
                                  double tol = kDegeneracyTol) {
  std::sort(values.begin(), values.end(), std::greater<>());
  Spectrum s;
  for (double v : values) {
    if (!s.eigenvalues.empty()) {
      // Compare against the first member of the level so that long chains of
      // nearly equal values cannot drift.
      double head = s.eigenvalues.back();
      if (std::abs(head - v) <= tol * std::max(1.0, std::abs(head))) {
        ++s.multiplicities.back();
        continue;
      }
    }
    s.eigenvalues.push_back(v);
    s.multiplicities.push_back(1);
  }
  return s;
}

struct HermitianEigensystem {
  Eigen::VectorXd values;  // descending
  ComplexMatrix vectors;   // column k belongs to values(k)
};

inline void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::kNotSquare,
                std::string(what) + " is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
}

inline void require_hermitian(const ComplexMatrix& m, const char* what) {
  require_square(m, what);
  double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) {
    throw Error(ErrorCode::kNotHermitian, std::string(what) +
                                              " deviates from its adjoint by " +
                                              std::to_string(defect));
  }
}

inline HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m) {
  require_hermitian(m, "matrix");
  // Symmetrize so the solver sees an exactly Hermitian input.
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotHermitian, "eigensolver did not converge");
  }
  const Eigen::Index n = h.rows();
  HermitianEigensystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen returns ascending order.
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

inline std::vector<double> hermitian_eigenvalue_list(const ComplexMatrix& m) {
  auto sys = hermitian_eigensystem(m);
  return {sys.values.data(), sys.values.data() + sys.values.size()};
}

inline Spectrum hermitian_eigenvalues(const ComplexMatrix& m) {
  return group_eigenvalues(hermitian_eigenvalue_list(m));
}

/// -sum p log2 p over a list of probabilities, with 0 log 0 = 0.
inline double shannon_entropy_bits(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (std::abs(p) < kZeroEigenvalue) continue;
    h -= p * std::log2(p);
  }
  return h;
}

/// p log2 p with the 0 log 0 = 0 convention.
inline double xlog2x(double p) {
  return std::abs(p) < kZeroEigenvalue ? 0.0 : p * std::log2(p);
}

inline double von_neumann_entropy(const ComplexMatrix& rho) {
  require_hermitian(rho, "density matrix");
  double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > kTraceTol) {
    throw Error(ErrorCode::kNotDensityMatrix,
                "trace is " + std::to_string(trace));
  }
  auto values = hermitian_eigenvalue_list(rho);
  for (double& v : values) {
    if (v < -kNegativeEigenvalueTol) {
      throw Error(ErrorCode::kNotDensityMatrix,
                  "negative eigenvalue " + std::to_string(v));
    }
    v = std::max(v, 0.0);
  }
  return shannon_entropy_bits(values);
}

/// Row-stacking vectorization: component r * cols + c holds m(r, c).
inline ComplexVector vectorize(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) v(r * m.cols() + c) = m(r, c);
  }
  return v;
}

inline ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index d) {
  if (v.size() != d * d) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector of length " + std::to_string(v.size()) +
                    " is not a " + std::to_string(d) + "x" +
                    std::to_string(d) + " matrix");
  }
  ComplexMatrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = v(r * d + c);
  }
  return m;
}

/// S|m, n> = |n, m> on C^d (x) C^d.
inline ComplexMatrix swap_operator(int d) {
  if (d < 1) {
    throw Error(ErrorCode::kDimensionTooSmall, "swap needs d >= 1");
  }
  ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) s(n * d + m, m * d + n) = 1.0;
  }
  return s;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// |i><j| in dimension d.
inline ComplexMatrix unit_matrix(int d, int i, int j) {
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

/// Transpose of the second tensor factor of an operator on C^a (x) C^b.
inline ComplexMatrix partial_transpose_second(const ComplexMatrix& m, int a,
                                              int b) {
  if (m.rows() != a * b || m.cols() != a * b) {
    throw Error(ErrorCode::kDimensionMismatch, "partial transpose shape");
  }
  ComplexMatrix out(a * b, a * b);
  for (int i = 0; i < a; ++i)
    for (int k = 0; k < b; ++k)
      for (int j = 0; j < a; ++j)
        for (int l = 0; l < b; ++l)
          out(i * b + k, j * b + l) = m(i * b + l, j * b + k);
  return out;
}

/// Trace over the second tensor factor of an operator on C^a (x) C^b.
inline ComplexMatrix partial_trace_second(const ComplexMatrix& m, int a,
                                          int b) {
  if (m.rows() != a * b || m.cols() != a * b) {
    throw Error(ErrorCode::kDimensionMismatch, "partial trace shape");
  }
  ComplexMatrix out = ComplexMatrix::Zero(a, a);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j)
      for (int k = 0; k < b; ++k) out(i, j) += m(i * b + k, j * b + k);
  return out;
}

}  // namespace whls
