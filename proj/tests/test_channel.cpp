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
#include <vector>

#include "testutil.hpp"
#include "whls/channel.hpp"

namespace whls {
namespace test_channel {

using Catch::Approx;
using testutil::throws_code;

static std::vector<ChannelSpec> sample_specs() {
  std::vector<ChannelSpec> specs;
  for (int d = 2; d <= 6; ++d) {
    specs.push_back(ChannelSpec::so_ls(d));
    specs.push_back(ChannelSpec::u_plus(d));
    for (double x : {0.0, 0.3, 0.5, 1.0})
      specs.push_back(ChannelSpec::noisy(d, x));
    for (double eta : {-1.0, -0.4, 0.0, 0.7, 1.0})
      specs.push_back(ChannelSpec::wh_eta(d, eta));
  }
  for (double j : {0.5, 1.0, 1.5, 2.0}) specs.push_back(ChannelSpec::spin(j));
  return specs;
}

SCENARIO("Kraus operators") {
  GIVEN("The noiseless channel") {
    KrausSet k = kraus_of(ChannelSpec::noisy(3, 0.0));
    REQUIRE(k.size() == 7);
    CHECK(k.operators[0] == ComplexMatrix::Identity(3, 3));
    for (std::size_t a = 1; a < k.size(); ++a) CHECK(k.operators[a].isZero(0.0));
  }
  GIVEN("x = 1 in d = 3") {
    KrausSet k = kraus_of(ChannelSpec::noisy(3, 1.0));
    REQUIRE(k.size() == 7);
    CHECK(k.operators[0].isZero(0.0));
    int nonzero = 0;
    for (std::size_t a = 1; a < k.size(); ++a) {
      if (!k.operators[a].isZero(0.0)) ++nonzero;
      // Weight sqrt(1/(2 (d-1))) = 1/2 on unit-modulus entries.
      CHECK(max_abs(k.operators[a]) == Approx(0.5));
      auto p = k.labels[a].pair;
      CHECK(p.m != p.n);
      CHECK(max_abs_diff(k.operators[a], 0.5 * testutil::ref_j(3, p.m, p.n)) <
            1e-15);
    }
    CHECK(nonzero == 6);
  }
  GIVEN("SO_D_LS in d = 4") {
    KrausSet k = kraus_of(ChannelSpec::so_ls(4));
    REQUIRE(k.size() == 6);
    for (const auto& a : k.operators)
      CHECK(max_abs(a) == Approx(1.0 / std::sqrt(3.0)));
  }
  GIVEN("Every family") {
    for (const auto& spec : sample_specs()) {
      KrausSet k = kraus_of(spec);
      CHECK(completeness_defect(k) < 1e-12);
      CHECK(k.input_dim() == spec.d);
      if (spec.family == Family::kNoisySoLs)
        CHECK(static_cast<int>(k.size()) == 1 + spec.d * (spec.d - 1));
    }
  }
  GIVEN("Invalid specs") {
    CHECK(throws_code([] { kraus_of(ChannelSpec::noisy(3, 1.5)); },
                      ErrorCode::kInvalidSpec));
    CHECK(throws_code([] { kraus_of(ChannelSpec::noisy(1, 0.5)); },
                      ErrorCode::kInvalidSpec));
    CHECK(throws_code([] { kraus_of(ChannelSpec::wh_eta(3, -1.5)); },
                      ErrorCode::kInvalidSpec));
    ChannelSpec bad_spin = ChannelSpec::spin(1.0);
    bad_spin.d = 4;
    CHECK(throws_code([&] { kraus_of(bad_spin); }, ErrorCode::kInvalidSpec));
    CHECK(throws_code([] { KrausSet k; completeness_defect(k); },
                      ErrorCode::kEmptyKrausSet));
  }
}

SCENARIO("Closed-form action") {
  GIVEN("The maximally mixed state") {
    for (int d = 2; d <= 7; ++d)
      for (double x : {0.0, 0.25, 0.5, 1.0}) {
        ComplexMatrix mixed = ComplexMatrix::Identity(d, d) / double(d);
        CHECK(max_abs_diff(whls::apply(ChannelSpec::noisy(d, x), mixed), mixed) <
              1e-15);
        CHECK(whls::apply(ChannelSpec::noisy(d, x), ComplexMatrix::Identity(d, d)) ==
              ComplexMatrix::Identity(d, d));
      }
  }
  GIVEN("A basis projector under the full-noise channel, d = 3") {
    ComplexMatrix out = whls::apply(ChannelSpec::noisy(3, 1.0), unit_matrix(3, 0, 0));
    ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
    expected(1, 1) = 0.5;
    expected(2, 2) = 0.5;
    CHECK(max_abs_diff(out, expected) < 1e-15);
  }
  GIVEN("A basis projector under U_D_PLUS, d = 3") {
    ComplexMatrix out = whls::apply(ChannelSpec::u_plus(3), unit_matrix(3, 0, 0));
    ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
    expected(0, 0) = 0.5;
    expected(1, 1) = 0.25;
    expected(2, 2) = 0.25;
    CHECK(max_abs_diff(out, expected) < 1e-15);
  }
  GIVEN("Kraus sums against closed forms") {
    Rng rng(101);
    for (const auto& spec : sample_specs()) {
      if (spec.family == Family::kSpinLs) continue;
      KrausSet k = kraus_of(spec);
      double worst = 0.0;
      for (int t = 0; t < 100; ++t) {
        ComplexMatrix rho = random_density_matrix(spec.d, rng);
        worst = std::max(worst, max_abs_diff(whls::apply(spec, rho), apply_kraus(k, rho)));
      }
      CHECK(worst < 1e-12);
    }
  }
  GIVEN("Trace and Hermiticity") {
    Rng rng(7);
    for (const auto& spec : sample_specs()) {
      ComplexMatrix rho = random_density_matrix(spec.d, rng);
      ComplexMatrix out = whls::apply(spec, rho);
      CHECK(std::abs(out.trace() - cplx(1.0)) < 1e-14);
      CHECK(hermiticity_defect(out) < 1e-15);
    }
  }
  GIVEN("Pure inputs") {
    Rng rng(8);
    for (const auto& spec : sample_specs()) {
      double lowest = 1.0;
      for (int t = 0; t < 100; ++t) {
        ComplexVector psi = random_pure_state(spec.d, rng);
        auto values = hermitian_eigenvalue_list(whls::apply(spec, psi * psi.adjoint()));
        lowest = std::min(lowest, values.back());
      }
      CHECK(lowest >= -1e-10);
    }
  }
  GIVEN("A wrong input size") {
    CHECK(throws_code(
        [] { whls::apply(ChannelSpec::noisy(3, 0.5), ComplexMatrix::Identity(2, 2)); },
        ErrorCode::kDimensionMismatch));
  }
}

SCENARIO("Spin-1 and SO(3) agree") {
  Rng rng(2024);
  ChannelSpec spin = ChannelSpec::spin(1.0);
  ChannelSpec so3 = ChannelSpec::so_ls(3);
  GeneratorSet cart = cartesian_spin1_generators();
  double worst_std = 0.0, worst_cart = 0.0;
  for (int t = 0; t < 100; ++t) {
    ComplexMatrix rho = random_density_matrix(3, rng);
    ComplexMatrix lambda = ComplexMatrix::Zero(3, 3);
    for (const auto& j : cart.operators) lambda += 0.5 * j * rho * j;
    worst_cart = std::max(worst_cart, max_abs_diff(lambda, whls::apply(so3, rho)));
    // Same map after the change of basis from |1,m> to the Cartesian axes.
    ComplexMatrix v(3, 3);
    const double r = 1.0 / std::sqrt(2.0);
    v.col(0) << -r, cplx(0.0, -r), 0.0;
    v.col(1) << 0.0, 0.0, 1.0;
    v.col(2) << r, cplx(0.0, -r), 0.0;
    ComplexMatrix out_std = whls::apply(spin, v.adjoint() * rho * v);
    worst_std = std::max(worst_std,
                         max_abs_diff(v * out_std * v.adjoint(), whls::apply(so3, rho)));
  }
  CHECK(worst_cart < 1e-12);
  CHECK(worst_std < 1e-12);
}

SCENARIO("Werner-Holevo family") {
  Rng rng(55);
  for (int d = 2; d <= 6; ++d)
    for (double eta : {-1.0, -0.5, 0.0, 0.25, 1.0}) {
      ChannelSpec wh = ChannelSpec::wh_eta(d, eta);
      ComplexMatrix rho = random_density_matrix(d, rng);
      ComplexMatrix mix = 0.5 * (1.0 - eta) * whls::apply(ChannelSpec::so_ls(d), rho) +
                          0.5 * (1.0 + eta) * whls::apply(ChannelSpec::u_plus(d), rho);
      CHECK(max_abs_diff(whls::apply(wh, rho), mix) < 1e-15);
      // Standard one-parameter form ((d - eta) tr I + (d eta - 1) rho^T) /
      // (d^2 - 1).
      ComplexMatrix standard =
          ((d - eta) * rho.trace() * ComplexMatrix::Identity(d, d) +
           (d * eta - 1.0) * rho.transpose()) /
          (d * d - 1.0);
      CHECK(max_abs_diff(whls::apply(wh, rho), standard) < 1e-14);
    }
  GIVEN("Endpoints") {
    ComplexMatrix rho = random_density_matrix(4, rng);
    CHECK(max_abs_diff(whls::apply(ChannelSpec::wh_eta(4, -1.0), rho),
                       whls::apply(ChannelSpec::so_ls(4), rho)) < 1e-15);
    CHECK(max_abs_diff(whls::apply(ChannelSpec::wh_eta(4, 1.0), rho),
                       whls::apply(ChannelSpec::u_plus(4), rho)) < 1e-15);
  }
}

SCENARIO("Choi matrix") {
  GIVEN("The identity channel") {
    ComplexMatrix c = choi_matrix(ChannelSpec::noisy(3, 0.0));
    CHECK(std::abs(c.trace() - cplx(3.0)) < 1e-14);
    auto values = hermitian_eigenvalue_list(c);
    CHECK(values[0] == Approx(3.0));
    CHECK(std::abs(values[1]) < 1e-12);
  }
  GIVEN("Every family") {
    for (const auto& spec : sample_specs()) {
      ComplexMatrix c = choi_matrix(spec);
      const int d = spec.d;
      CHECK(std::abs(c.trace() - cplx(double(d))) < 1e-12);
      CHECK(hermitian_eigenvalue_list(c).back() >= -1e-10);
      CHECK(max_abs_diff(partial_trace_second(c, d, d),
                         ComplexMatrix::Identity(d, d)) < 1e-12);
    }
  }
  GIVEN("SO_D_LS in d = 3") {
    // Choi = (I - S)/(d - 1); its partial transpose is
    // (I - d |Omega><Omega|)/(d - 1) with |Omega> = sum_i |i,i>/sqrt(d), so
    // the spectrum is {-1, 1/2 (8 times)}.
    const int d = 3;
    ComplexMatrix expected =
        (ComplexMatrix::Identity(d * d, d * d) - swap_operator(d)) / (d - 1.0);
    CHECK(max_abs_diff(choi_matrix(ChannelSpec::so_ls(d)), expected) < 1e-15);
    ComplexVector omega = ComplexVector::Zero(d * d);
    for (int i = 0; i < d; ++i) omega(i * d + i) = 1.0;
    ComplexMatrix pt_expected =
        (ComplexMatrix::Identity(d * d, d * d) - omega * omega.adjoint()) /
        (d - 1.0);
    CHECK(max_abs_diff(partial_transpose_second(expected, d, d), pt_expected) <
          1e-15);
    auto values = testutil::real_eigenvalues(pt_expected);
    CHECK(values.front() == Approx(-1.0));
    CHECK(values[1] == Approx(0.5));
    CHECK(choi_partial_transpose_min_eigenvalue(ChannelSpec::so_ls(d)) ==
          Approx(-1.0));
    CHECK(choi_partial_transpose_min_eigenvalue(ChannelSpec::noisy(d, 1.0)) ==
          Approx(-1.0));
  }
  GIVEN("The noisy qubit channel at x = 1/2") {
    CHECK(choi_partial_transpose_min_eigenvalue(ChannelSpec::noisy(2, 0.5)) >=
          -1e-10);
  }
}

SCENARIO("Covariance") {
  GIVEN("SO_D_LS under U(4)") {
    CHECK(check_covariance(ChannelSpec::so_ls(4), 20, 1));
  }
  GIVEN("The noisy channel under O(4)") {
    CHECK(check_covariance(ChannelSpec::noisy(4, 0.5), 20, 2));
  }
  GIVEN("The noisy channel under complex unitaries") {
    CHECK_FALSE(check_covariance(ChannelSpec::noisy(3, 0.5), 5, 3,
                                 CovarianceGroup::kUnitary));
  }
  GIVEN("The other families") {
    CHECK(check_covariance(ChannelSpec::u_plus(3), 20, 4));
    CHECK(check_covariance(ChannelSpec::wh_eta(5, 0.3), 20, 5));
    CHECK(check_covariance(ChannelSpec::spin(1.5), 20, 6));
    CHECK_FALSE(check_covariance(ChannelSpec::spin(1.5), 5, 6,
                                 CovarianceGroup::kUnitary));
  }
}

SCENARIO("Spec serialization") {
  for (const auto& spec : sample_specs()) {
    ChannelSpec back = spec_from_json(spec_to_json(spec));
    CHECK(back.family == spec.family);
    CHECK(back.d == spec.d);
    CHECK(back.x == spec.x);
    CHECK(back.eta == spec.eta);
    CHECK(back.j == spec.j);
  }
  auto parse = [](const char* text) {
    return spec_from_json(nlohmann::json::parse(text));
  };
  CHECK(parse(R"({"family": "NOISY_SO_D_LS", "d": 3, "x": 0.25})").x == 0.25);
  CHECK(parse(R"({"family": "SPIN_J_LS", "j": 1.5})").d == 4);
  CHECK(throws_code([&] { parse(R"({"family": "NOPE", "d": 3})"); },
                    ErrorCode::kInvalidSpec));
  CHECK(throws_code([&] { parse(R"({"family": "NOISY_SO_D_LS", "d": 3})"); },
                    ErrorCode::kInvalidSpec));
  CHECK(throws_code(
      [&] { parse(R"({"family": "NOISY_SO_D_LS", "d": 3, "x": 2})"); },
      ErrorCode::kInvalidSpec));
  CHECK(throws_code([&] { parse(R"({"family": "SPIN_J_LS", "j": 1, "d": 4})"); },
                    ErrorCode::kInvalidSpec));
  CHECK(parse_family("WH_ETA") == Family::kWhEta);
  CHECK_FALSE(parse_family("wh_eta").has_value());
}

}  // namespace test_channel
}  // namespace whls
