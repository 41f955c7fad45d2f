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
 * @file channel.hpp
 * @brief The Landau-Streater / Werner-Holevo channel families.
 *
 *   SO_D_LS        Phi(rho)   = (tr(rho) I - rho^T) / (d - 1)
 *   NOISY_SO_D_LS  Phi_x(rho) = (1 - x) rho + x Phi(rho)
 *   SPIN_J_LS      Lambda_j(rho) = (J_x rho J_x + J_y rho J_y + J_z rho J_z)
 *                                  / (j (j + 1))
 *   U_D_PLUS       Phi+(rho)  = (tr(rho) I + rho^T) / (d + 1)
 *   WH_ETA         (1 - eta)/2 Phi(rho) + (1 + eta)/2 Phi+(rho)
 *
 * apply() evaluates these closed forms. kraus_of() builds an explicit Kraus
 * set for each family; it is the independent route used to cross-check
 * apply(). Spin-j channels have no closed form and are always evaluated from
 * their Kraus operators.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "whls/algebra.hpp"
#include "whls/matcore.hpp"
#include "whls/random.hpp"

namespace whls {

enum class Family { kSoLs, kNoisySoLs, kSpinLs, kUPlus, kWhEta };

inline constexpr std::string_view family_name(Family f) {
  switch (f) {
    case Family::kSoLs: return "SO_D_LS";
    case Family::kNoisySoLs: return "NOISY_SO_D_LS";
    case Family::kSpinLs: return "SPIN_J_LS";
    case Family::kUPlus: return "U_D_PLUS";
    case Family::kWhEta: return "WH_ETA";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::kSoLs, Family::kNoisySoLs, Family::kSpinLs,
                   Family::kUPlus, Family::kWhEta}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

struct ChannelSpec {
  Family family = Family::kNoisySoLs;
  int d = 2;
  double x = 0.0;    // NOISY_SO_D_LS only
  double eta = 0.0;  // WH_ETA only
  double j = 0.0;    // SPIN_J_LS only

  static ChannelSpec so_ls(int d) { return {Family::kSoLs, d, 0, 0, 0}; }
  static ChannelSpec noisy(int d, double x) {
    return {Family::kNoisySoLs, d, x, 0, 0};
  }
  static ChannelSpec spin(double j) {
    return {Family::kSpinLs, static_cast<int>(std::lround(2 * j)) + 1, 0, 0, j};
  }
  static ChannelSpec u_plus(int d) { return {Family::kUPlus, d, 0, 0, 0}; }
  static ChannelSpec wh_eta(int d, double eta) {
    return {Family::kWhEta, d, 0, eta, 0};
  }

  void validate() const {
    if (d < 2) {
      throw Error(ErrorCode::kInvalidSpec,
                  "dimension must be >= 2, got " + std::to_string(d));
    }
    switch (family) {
      case Family::kNoisySoLs:
        if (!(x >= 0.0 && x <= 1.0)) {
          throw Error(ErrorCode::kInvalidSpec,
                      "noise parameter x must lie in [0, 1], got " +
                          std::to_string(x));
        }
        break;
      case Family::kWhEta:
        if (!(eta >= -1.0 && eta <= 1.0)) {
          throw Error(ErrorCode::kInvalidSpec,
                      "eta must lie in [-1, 1], got " + std::to_string(eta));
        }
        break;
      case Family::kSpinLs: {
        double twice = 2.0 * j;
        if (!(twice >= 1.0) || std::abs(twice - std::round(twice)) > 1e-12) {
          throw Error(ErrorCode::kInvalidSpec,
                      "2j must be a positive integer, got j = " +
                          std::to_string(j));
        }
        if (d != static_cast<int>(std::lround(twice)) + 1) {
          throw Error(ErrorCode::kInvalidSpec, "spin channel needs d = 2j + 1");
        }
        break;
      }
      case Family::kSoLs:
      case Family::kUPlus:
        break;
    }
  }
};

inline nlohmann::json spec_to_json(const ChannelSpec& s) {
  nlohmann::json j{{"family", std::string(family_name(s.family))}, {"d", s.d}};
  if (s.family == Family::kNoisySoLs) j["x"] = s.x;
  if (s.family == Family::kWhEta) j["eta"] = s.eta;
  if (s.family == Family::kSpinLs) j["j"] = s.j;
  return j;
}

inline ChannelSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
    throw Error(ErrorCode::kInvalidSpec, "spec needs a string \"family\"");
  }
  auto family = parse_family(j["family"].get<std::string>());
  if (!family) {
    throw Error(ErrorCode::kInvalidSpec,
                "unknown family " + j["family"].get<std::string>());
  }
  auto number = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_number()) {
      throw Error(ErrorCode::kInvalidSpec, std::string(key) + " must be a number");
    }
    return j[key].get<double>();
  };
  ChannelSpec s;
  s.family = *family;
  if (*family == Family::kSpinLs) {
    auto spin = number("j");
    if (!spin) throw Error(ErrorCode::kInvalidSpec, "spin spec needs \"j\"");
    s = ChannelSpec::spin(*spin);
    if (auto d = number("d"); d && static_cast<int>(*d) != s.d) {
      throw Error(ErrorCode::kInvalidSpec, "spin channel needs d = 2j + 1");
    }
  } else {
    if (!j.contains("d") || !j["d"].is_number_integer()) {
      throw Error(ErrorCode::kInvalidSpec, "spec needs an integer \"d\"");
    }
    s.d = j["d"].get<int>();
    if (*family == Family::kNoisySoLs) {
      auto x = number("x");
      if (!x) throw Error(ErrorCode::kInvalidSpec, "noisy spec needs \"x\"");
      s.x = *x;
    }
    if (*family == Family::kWhEta) {
      auto eta = number("eta");
      if (!eta) throw Error(ErrorCode::kInvalidSpec, "WH_ETA spec needs \"eta\"");
      s.eta = *eta;
    }
  }
  s.validate();
  return s;
}

struct KrausLabel {
  enum class Kind { kIdentity, kAntisymmetric, kSymmetric, kSpinAxis, kRow };
  Kind kind = Kind::kIdentity;
  IndexPair pair{};
  Axis axis = Axis::kX;
};

struct KrausSet {
  std::vector<ComplexMatrix> operators;
  std::vector<KrausLabel> labels;

  std::size_t size() const { return operators.size(); }
  Eigen::Index input_dim() const { return operators.front().cols(); }
  Eigen::Index output_dim() const { return operators.front().rows(); }
};

/// max |sum_a A_a^dagger A_a - I|.
inline double completeness_defect(const KrausSet& k) {
  if (k.operators.empty()) {
    throw Error(ErrorCode::kEmptyKrausSet, "no Kraus operators");
  }
  ComplexMatrix total = gram_sum(k.operators);
  return max_abs(total - ComplexMatrix::Identity(total.rows(), total.cols()));
}

inline ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& rho) {
  if (k.operators.empty()) {
    throw Error(ErrorCode::kEmptyKrausSet, "no Kraus operators");
  }
  if (rho.rows() != k.input_dim() || rho.cols() != k.input_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "input is " + std::to_string(rho.rows()) + "x" +
                    std::to_string(rho.cols()) + ", channel expects " +
                    std::to_string(k.input_dim()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(k.output_dim(), k.output_dim());
  for (const auto& a : k.operators) out += a * rho * a.adjoint();
  return out;
}

namespace detail {

inline void append_scaled_so_pairs(KrausSet& k, int d, double weight,
                                   bool ordered_pairs) {
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      if (m == n || (!ordered_pairs && n < m)) continue;
      k.operators.push_back(weight * so_generator(d, m, n));
      k.labels.push_back({KrausLabel::Kind::kAntisymmetric, {m, n}, Axis::kX});
    }
}

inline void append_scaled_u_pairs(KrausSet& k, int d, double weight) {
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      k.operators.push_back(weight * u_generator(d, m, n));
      k.labels.push_back({KrausLabel::Kind::kSymmetric, {m, n}, Axis::kX});
    }
}

}  // namespace detail

/**
 * Explicit Kraus operators.
 *
 *  - SO_D_LS: J_mn / sqrt(d-1) for m < n.
 *  - NOISY_SO_D_LS: A_0 = sqrt(1-x) I first, then sqrt(x / (2(d-1))) J_mn for
 *    every ordered pair m != n, lexicographic. Zero-weight members are kept so
 *    the count is always 1 + d(d-1).
 *  - SPIN_J_LS: J_a / sqrt(j(j+1)), a = x, y, z.
 *  - U_D_PLUS: K_mn / sqrt(2(d+1)) for every ordered pair, diagonal included.
 *  - WH_ETA: sqrt((1-eta)/2) times the SO_D_LS set followed by
 *    sqrt((1+eta)/2) times the U_D_PLUS set.
 */
inline KrausSet kraus_of(const ChannelSpec& spec) {
  spec.validate();
  const int d = spec.d;
  KrausSet k;
  switch (spec.family) {
    case Family::kSoLs:
      detail::append_scaled_so_pairs(k, d, 1.0 / std::sqrt(d - 1.0), false);
      break;
    case Family::kNoisySoLs:
      k.operators.push_back(std::sqrt(1.0 - spec.x) *
                            ComplexMatrix::Identity(d, d));
      k.labels.push_back({});
      detail::append_scaled_so_pairs(
          k, d, std::sqrt(spec.x / (2.0 * (d - 1.0))), true);
      break;
    case Family::kSpinLs: {
      auto gens = build_spin_generators(spec.j);
      double scale = 1.0 / std::sqrt(spec.j * (spec.j + 1.0));
      for (std::size_t a = 0; a < 3; ++a) {
        k.operators.push_back(scale * gens.operators[a]);
        k.labels.push_back({KrausLabel::Kind::kSpinAxis, {},
                            std::get<Axis>(gens.labels[a])});
      }
      break;
    }
    case Family::kUPlus:
      detail::append_scaled_u_pairs(k, d, 1.0 / std::sqrt(2.0 * (d + 1.0)));
      break;
    case Family::kWhEta:
      detail::append_scaled_so_pairs(
          k, d, std::sqrt((1.0 - spec.eta) / 2.0 / (d - 1.0)), false);
      detail::append_scaled_u_pairs(
          k, d, std::sqrt((1.0 + spec.eta) / 2.0 / (2.0 * (d + 1.0))));
      break;
  }
  return k;
}

inline void require_input(const ChannelSpec& spec, const ComplexMatrix& rho) {
  if (rho.rows() != spec.d || rho.cols() != spec.d) {
    throw Error(ErrorCode::kDimensionMismatch,
                "input is " + std::to_string(rho.rows()) + "x" +
                    std::to_string(rho.cols()) + ", channel acts on d = " +
                    std::to_string(spec.d));
  }
}

/// Closed-form action of the channel. Linear, so any d x d matrix is accepted.
inline ComplexMatrix apply(const ChannelSpec& spec, const ComplexMatrix& rho) {
  spec.validate();
  require_input(spec, rho);
  const int d = spec.d;
  const cplx tr = rho.trace();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  auto minus = [&] { return ComplexMatrix((tr * id - rho.transpose()) / (d - 1.0)); };
  auto plus = [&] { return ComplexMatrix((tr * id + rho.transpose()) / (d + 1.0)); };
  switch (spec.family) {
    case Family::kSoLs:
      return minus();
    case Family::kNoisySoLs:
      return (1.0 - spec.x) * rho + spec.x * minus();
    case Family::kUPlus:
      return plus();
    case Family::kWhEta:
      return 0.5 * (1.0 - spec.eta) * minus() + 0.5 * (1.0 + spec.eta) * plus();
    case Family::kSpinLs:
      return apply_kraus(kraus_of(spec), rho);
  }
  return rho;
}

/// (id (x) Phi) applied to sum_{i,j} |i,i><j,j|; entry (i d + a, j d + b) is
/// Phi(|i><j|)_{ab}.
inline ComplexMatrix choi_matrix(const ChannelSpec& spec) {
  spec.validate();
  const int d = spec.d;
  ComplexMatrix choi(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      choi.block(i * d, j * d, d, d) = whls::apply(spec, unit_matrix(d, i, j));
  return choi;
}

/// Smallest eigenvalue of the partial transpose of the Choi matrix. A value
/// below zero certifies that the channel is not entanglement breaking.
inline double choi_partial_transpose_min_eigenvalue(const ChannelSpec& spec) {
  ComplexMatrix pt = partial_transpose_second(choi_matrix(spec), spec.d, spec.d);
  return hermitian_eigenvalue_list(pt).back();
}

enum class CovarianceGroup {
  kNatural,  // U(d) for the pure families, O(d) for the noisy family
  kUnitary,  // always draw complex unitaries
};

/**
 * Largest deviation of the covariance identity over random trials.
 *
 * SO_D_LS, U_D_PLUS and WH_ETA are tested in the contravariant form
 * Phi(U rho U^dagger) = U^* Phi(rho) U^T, the noisy family in the form
 * Phi_x(O rho O^T) = O Phi_x(rho) O^T, and spin channels against spin-j
 * rotations exp(-i theta n.J).
 */
inline double covariance_defect(const ChannelSpec& spec, int trials,
                                std::uint64_t seed,
                                CovarianceGroup group = CovarianceGroup::kNatural) {
  spec.validate();
  const int d = spec.d;
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    ComplexMatrix rho = random_density_matrix(d, rng);
    ComplexMatrix lhs;
    ComplexMatrix rhs;
    switch (spec.family) {
      case Family::kSoLs:
      case Family::kUPlus:
      case Family::kWhEta: {
        ComplexMatrix u = random_unitary(d, rng);
        lhs = whls::apply(spec, u * rho * u.adjoint());
        rhs = u.conjugate() * whls::apply(spec, rho) * u.transpose();
        break;
      }
      case Family::kNoisySoLs: {
        ComplexMatrix u = group == CovarianceGroup::kNatural
                              ? random_orthogonal(d, rng)
                              : random_unitary(d, rng);
        lhs = whls::apply(spec, u * rho * u.adjoint());
        rhs = u * whls::apply(spec, rho) * u.adjoint();
        break;
      }
      case Family::kSpinLs: {
        ComplexMatrix u;
        if (group == CovarianceGroup::kNatural) {
          auto gens = build_spin_generators(spec.j);
          std::normal_distribution<double> normal(0.0, 1.0);
          Eigen::Vector3d axis(normal(rng), normal(rng), normal(rng));
          axis.normalize();
          std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
          double theta = angle(rng);
          ComplexMatrix h = axis(0) * gens.operators[0] +
                            axis(1) * gens.operators[1] +
                            axis(2) * gens.operators[2];
          auto sys = hermitian_eigensystem(h);
          ComplexVector phases(d);
          for (int k = 0; k < d; ++k) {
            phases(k) = std::exp(cplx(0.0, -theta * sys.values(k)));
          }
          u = sys.vectors * phases.asDiagonal() * sys.vectors.adjoint();
        } else {
          u = random_unitary(d, rng);
        }
        lhs = whls::apply(spec, u * rho * u.adjoint());
        rhs = u * whls::apply(spec, rho) * u.adjoint();
        break;
      }
    }
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  return worst;
}

inline bool check_covariance(const ChannelSpec& spec, int trials,
                             std::uint64_t seed = 0,
                             CovarianceGroup group = CovarianceGroup::kNatural) {
  return covariance_defect(spec, trials, seed, group) <= 1e-9;
}

}  // namespace whls
