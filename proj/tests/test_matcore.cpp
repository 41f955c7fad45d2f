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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "testutil.hpp"
#include "whls/io.hpp"
#include "whls/matcore.hpp"
#include "whls/random.hpp"

namespace whls {
namespace test_matcore {

using Catch::Approx;
using testutil::throws_code;

SCENARIO("Hermitian eigenvalues") {
  GIVEN("The 3x3 identity") {
    Spectrum s = hermitian_eigenvalues(ComplexMatrix::Identity(3, 3));
    REQUIRE(s.eigenvalues.size() == 1);
    CHECK(s.eigenvalues[0] == Approx(1.0));
    CHECK(s.multiplicities[0] == 3);
  }
  GIVEN("diag(2, -1)") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = -1.0;
    Spectrum s = hermitian_eigenvalues(m);
    REQUIRE(s.eigenvalues.size() == 2);
    CHECK(s.eigenvalues[0] == Approx(2.0));
    CHECK(s.eigenvalues[1] == Approx(-1.0));
    CHECK(s.dimension() == 2);
  }
  GIVEN("Pauli-y") {
    // Characteristic polynomial lambda^2 - 1.
    ComplexMatrix y = testutil::ref_j(2, 0, 1);
    auto values = hermitian_eigenvalue_list(y);
    CHECK(values[0] == Approx(1.0));
    CHECK(values[1] == Approx(-1.0));
  }
  GIVEN("Random Hermitian matrices") {
    Rng rng(11);
    for (int d = 2; d <= 9; ++d) {
      ComplexMatrix g = complex_gaussian(d, d, rng);
      ComplexMatrix h = g + g.adjoint();
      auto sys = hermitian_eigensystem(h);
      ComplexMatrix rebuilt =
          sys.vectors * sys.values.cast<cplx>().asDiagonal() *
          sys.vectors.adjoint();
      CHECK(max_abs_diff(h, rebuilt) < 1e-9);
      double sum = sys.values.sum();
      CHECK(std::abs(sum - h.trace().real()) < 1e-9);
      for (Eigen::Index k = 1; k < sys.values.size(); ++k)
        CHECK(sys.values(k - 1) >= sys.values(k));
    }
  }
  GIVEN("Bad input") {
    CHECK(throws_code([] { hermitian_eigenvalues(ComplexMatrix::Zero(2, 3)); },
                      ErrorCode::kNotSquare));
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK(throws_code([&] { hermitian_eigenvalues(m); },
                      ErrorCode::kNotHermitian));
  }
}

SCENARIO("Von Neumann entropy") {
  GIVEN("A pure state") {
    CHECK(von_neumann_entropy(unit_matrix(3, 0, 0)) == Approx(0.0).margin(1e-15));
  }
  GIVEN("The maximally mixed state in d = 4") {
    ComplexMatrix rho = ComplexMatrix::Identity(4, 4) / 4.0;
    CHECK(von_neumann_entropy(rho) == Approx(2.0).epsilon(1e-14));
  }
  GIVEN("diag(3/4, 1/4)") {
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho(0, 0) = 0.75;
    rho(1, 1) = 0.25;
    // -(3/4) log2(3/4) - (1/4) log2(1/4), evaluated with numpy.
    CHECK(von_neumann_entropy(rho) ==
          Approx(0.8112781244591328).epsilon(1e-14));
  }
  GIVEN("Unitary conjugation") {
    Rng rng(5);
    for (int d = 2; d <= 6; ++d) {
      ComplexMatrix rho = random_density_matrix(d, rng);
      ComplexMatrix u = random_unitary(d, rng);
      double s = von_neumann_entropy(rho);
      CHECK(std::abs(s - von_neumann_entropy(u * rho * u.adjoint())) < 1e-9);
      CHECK(s >= 0.0);
      CHECK(s <= std::log2(d) + 1e-12);
      CHECK(std::abs(s - testutil::ref_entropy(rho)) < 1e-9);
    }
  }
  GIVEN("Inputs outside the state space") {
    CHECK(throws_code(
        [] { von_neumann_entropy(ComplexMatrix::Identity(2, 2)); },
        ErrorCode::kNotDensityMatrix));
    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK(throws_code([&] { von_neumann_entropy(neg); },
                      ErrorCode::kNotDensityMatrix));
  }
  GIVEN("A tiny negative eigenvalue from roundoff") {
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho(0, 0) = 1.0 + 1e-12;
    rho(1, 1) = -1e-12;
    CHECK(von_neumann_entropy(rho) == Approx(0.0).margin(1e-10));
  }
}

SCENARIO("Row-stacking vectorization") {
  GIVEN("The 2x2 identity") {
    ComplexVector v = vectorize(ComplexMatrix::Identity(2, 2));
    CHECK(v(0) == cplx(1.0));
    CHECK(v(1) == cplx(0.0));
    CHECK(v(2) == cplx(0.0));
    CHECK(v(3) == cplx(1.0));
  }
  GIVEN("E_12") {
    ComplexVector v = vectorize(unit_matrix(2, 0, 1));
    CHECK(v(1) == cplx(1.0));
    CHECK(v.norm() == Approx(1.0));
  }
  GIVEN("A diagonal matrix") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 0.3;
    m(1, 1) = 0.7;
    ComplexVector v = vectorize(m);
    CHECK(v(0) == cplx(0.3));
    CHECK(v(3) == cplx(0.7));
    ComplexMatrix antisym = ComplexMatrix::Identity(4, 4) - swap_operator(2);
    CHECK((antisym * v).norm() == 0.0);
  }
  GIVEN("Linearity and round trip") {
    Rng rng(3);
    ComplexMatrix a = complex_gaussian(3, 3, rng);
    ComplexMatrix b = complex_gaussian(3, 3, rng);
    cplx alpha(0.5, -1.25), beta(2.0, 0.75);
    ComplexVector lhs = vectorize(alpha * a + beta * b);
    ComplexVector rhs = alpha * vectorize(a) + beta * vectorize(b);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(unvectorize(vectorize(a), 3) == a);
    CHECK(throws_code([&] { unvectorize(vectorize(a), 2); },
                      ErrorCode::kDimensionMismatch));
  }
}

SCENARIO("Swap operator") {
  GIVEN("d = 1") {
    ComplexMatrix s = swap_operator(1);
    REQUIRE(s.rows() == 1);
    CHECK(s(0, 0) == cplx(1.0));
  }
  GIVEN("d = 2") {
    ComplexMatrix s = swap_operator(2);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = 1.0;
    expected(1, 2) = 1.0;
    expected(2, 1) = 1.0;
    expected(3, 3) = 1.0;
    CHECK(s == expected);
  }
  GIVEN("d = 3") {
    ComplexMatrix s = swap_operator(3);
    CHECK(s * vectorize(unit_matrix(3, 0, 1)) == vectorize(unit_matrix(3, 1, 0)));
    CHECK(s * s == ComplexMatrix::Identity(9, 9));
    CHECK(s == s.transpose());
  }
  GIVEN("Random matrices") {
    Rng rng(9);
    for (int d = 2; d <= 5; ++d) {
      ComplexMatrix m = complex_gaussian(d, d, rng);
      CHECK(max_abs(swap_operator(d) * vectorize(m) -
                    vectorize(m.transpose())) == 0.0);
    }
  }
}

SCENARIO("Partial operations on bipartite operators") {
  Rng rng(21);
  ComplexMatrix a = complex_gaussian(2, 2, rng);
  ComplexMatrix b = complex_gaussian(3, 3, rng);
  ComplexMatrix ab = kron(a, b);
  CHECK(max_abs_diff(partial_transpose_second(ab, 2, 3),
                     kron(a, b.transpose())) < 1e-15);
  CHECK(max_abs_diff(partial_trace_second(ab, 2, 3), a * b.trace()) < 1e-14);
}

SCENARIO("Matrix serialization") {
  Rng rng(17);
  ComplexMatrix m = complex_gaussian(3, 4, rng);
  ComplexMatrix back = load_matrix(save_matrix(m));
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 4);
  CHECK(max_abs_diff(m, back) < 1e-15);
  CHECK(throws_code([] { load_matrix("[[1, 2]"); }, ErrorCode::kParseError));
  CHECK(throws_code([] { load_matrix("[[[1, 0]], [[1, 0], [0, 0]]]"); },
                    ErrorCode::kParseError));
}

SCENARIO("Eigenvalue grouping") {
  Spectrum s = group_eigenvalues({0.5, 1.0, 0.5 + 1e-12, -0.25});
  REQUIRE(s.eigenvalues.size() == 3);
  CHECK(s.eigenvalues[0] == 1.0);
  CHECK(s.multiplicities[1] == 2);
  CHECK(s.eigenvalues[2] == -0.25);
  CHECK(s.expanded().size() == 4);
}

}  // namespace test_matcore
}  // namespace whls
