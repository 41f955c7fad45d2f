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

#include "cli/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "whls/whls.hpp"

namespace whls {
namespace cli {

// ---------------------------------------------------------------------------
// Configuration

void SweepConfig::validate() const {
  if (d_values.empty()) throw UsageError("d_values must not be empty");
  for (int d : d_values) {
    if (d < 2) throw UsageError("every d must be >= 2, got " + std::to_string(d));
  }
  if (!(x_grid.step > 0.0)) throw UsageError("x_grid.step must be > 0");
  if (!(x_grid.start <= x_grid.stop)) {
    throw UsageError("x_grid.start must not exceed x_grid.stop");
  }
  if (!(x_grid.start >= 0.0 && x_grid.stop <= 1.0)) {
    throw UsageError("x_grid must lie in [0, 1]");
  }
  if (output_format != "csv" && output_format != "json") {
    throw UsageError("format must be csv or json, got " + output_format);
  }
}

std::vector<double> SweepConfig::x_values() const {
  std::vector<double> xs;
  const double slack = 1e-9 * x_grid.step;
  for (long k = 0;; ++k) {
    double x = x_grid.start + k * x_grid.step;
    if (x > x_grid.stop + slack) break;
    x = std::round(x * 1e12) / 1e12;
    xs.push_back(std::min(x, x_grid.stop));
  }
  return xs;
}

SweepConfig config_from_json(const nlohmann::json& j) {
  SweepConfig c;
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  try {
    if (j.contains("d_values")) c.d_values = j.at("d_values").get<std::vector<int>>();
    if (j.contains("x_grid")) {
      const auto& g = j.at("x_grid");
      if (g.contains("start")) c.x_grid.start = g.at("start").get<double>();
      if (g.contains("stop")) c.x_grid.stop = g.at("stop").get<double>();
      if (g.contains("step")) c.x_grid.step = g.at("step").get<double>();
    }
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      if (t.contains("algebra")) c.tolerances.algebra = t.at("algebra").get<double>();
      if (t.contains("capacity")) {
        c.tolerances.capacity = t.at("capacity").get<double>();
      }
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_format")) {
      c.output_format = j.at("output_format").get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }
  return c;
}

nlohmann::json config_to_json(const SweepConfig& c) {
  return {{"d_values", c.d_values},
          {"x_grid",
           {{"start", c.x_grid.start}, {"stop", c.x_grid.stop}, {"step", c.x_grid.step}}},
          {"tolerances",
           {{"algebra", c.tolerances.algebra}, {"capacity", c.tolerances.capacity}}},
          {"seed", c.seed},
          {"output_format", c.output_format}};
}

// ---------------------------------------------------------------------------
// Tables

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s == "-0") return "0";
  return s;
}

Cell Cell::number(double v) { return {Kind::kNumber, format_number(v)}; }
Cell Cell::integer(long long v) { return {Kind::kInteger, std::to_string(v)}; }
Cell Cell::string(std::string s) { return {Kind::kString, std::move(s)}; }
Cell Cell::boolean(bool b) { return {Kind::kBool, b ? "true" : "false"}; }

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::json cell_json(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::kNumber: {
      double v = std::strtod(c.text.c_str(), nullptr);
      if (!std::isfinite(v)) return c.text;
      return v;
    }
    case Cell::Kind::kInteger: return std::stoll(c.text);
    case Cell::Kind::kBool: return c.text == "true";
    case Cell::Kind::kString: return c.text;
  }
  return c.text;
}

}  // namespace

std::string render_csv(const Table& t) {
  std::string out;
  for (std::size_t k = 0; k < t.columns.size(); ++k) {
    if (k) out += ',';
    out += csv_escape(t.columns[k]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += csv_escape(row[k].text);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& t) {
  std::string out = "[";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    nlohmann::ordered_json obj;
    for (std::size_t k = 0; k < t.rows[r].size(); ++k) {
      obj[t.columns[k]] = cell_json(t.rows[r][k]);
    }
    out += (r ? ",\n " : "\n ") + obj.dump();
  }
  out += t.rows.empty() ? "]\n" : "\n]\n";
  return out;
}

int default_jobs() {
  if (const char* env = std::getenv("WHLS_JOBS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// ---------------------------------------------------------------------------
// Verify

namespace {

using Status = VerifyResult::Status;

struct CheckContext {
  int d;
  std::vector<double> xs;
  Tolerances tol;
  Rng rng;
};

struct CheckOutcome {
  Status status = Status::kPass;
  std::string detail;
};

CheckOutcome judge(double defect, double tol) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "defect %.3g, tolerance %.3g", defect, tol);
  return {defect <= tol ? Status::kPass : Status::kFail, buf};
}

double rel_diff(double a, double b) {
  if (a == 0.0 && b == 0.0) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

using CheckFn = std::function<CheckOutcome(CheckContext&)>;

const std::vector<std::pair<std::string, CheckFn>>& check_table() {
  static const std::vector<std::pair<std::string, CheckFn>> table{
      {"completeness",
       [](CheckContext& c) {
         auto g = build_so_generators(c.d);
         double defect = max_abs(gram_sum(g.operators) -
                                 (c.d - 1.0) * ComplexMatrix::Identity(c.d, c.d));
         return judge(defect, c.tol.algebra);
       }},
      {"commutators",
       [](CheckContext& c) {
         return judge(commutator_defect(build_so_generators(c.d)), c.tol.algebra);
       }},
      {"kraus",
       [](CheckContext& c) {
         double worst = 0.0;
         for (double x : c.xs) {
           auto spec = ChannelSpec::noisy(c.d, x);
           auto k = kraus_of(spec);
           worst = std::max(worst, completeness_defect(k));
           for (int t = 0; t < 10; ++t) {
             ComplexMatrix rho = random_density_matrix(c.d, c.rng);
             worst = std::max(worst, max_abs_diff(whls::apply(spec, rho), apply_kraus(k, rho)));
           }
         }
         return judge(worst, c.tol.algebra);
       }},
      {"covariance",
       [](CheckContext& c) {
         double worst = covariance_defect(ChannelSpec::so_ls(c.d), 5, c.rng());
         for (double x : c.xs)
           worst = std::max(worst,
                            covariance_defect(ChannelSpec::noisy(c.d, x), 5, c.rng()));
         return judge(worst, c.tol.algebra);
       }},
      {"spectrum",
       [](CheckContext& c) {
         double worst = 0.0;
         for (double x : c.xs) {
           auto spec = ChannelSpec::noisy(c.d, x);
           ChannelSpectrum s = channel_spectrum(spec);
           if (s.total_multiplicity() != c.d * c.d) return CheckOutcome{Status::kFail, "multiplicity"};
           for (const auto& e : s.entries) {
             int i = 0, j = e.basis_class == BasisClass::kZ ? 0 : 1;
             ComplexMatrix b = spectral_basis_operator(c.d, e.basis_class, i, j);
             worst = std::max(worst, max_abs(whls::apply(spec, b) - e.eigenvalue * b));
           }
         }
         return judge(worst, c.tol.algebra);
       }},
      {"determinant",
       [](CheckContext& c) {
         double worst = 0.0;
         for (double x : c.xs) {
           auto spec = ChannelSpec::noisy(c.d, x);
           DivisibilityVerdict v = determinant(spec);
           worst = std::max(worst, rel_diff(superoperator_determinant(spec), v.determinant));
           bool expected = x > v.condition_x && v.condition_dimension;
           if (expected != v.not_infinitesimally_divisible) {
             return CheckOutcome{Status::kFail, "verdict disagrees with the parity rule"};
           }
         }
         return judge(worst, c.tol.algebra);
       }},
      {"complement",
       [](CheckContext& c) {
         double worst = 0.0;
         for (double x : c.xs) {
           auto spec = ChannelSpec::noisy(c.d, x);
           for (int t = 0; t < 5; ++t) {
             ComplexMatrix rho = random_density_matrix(c.d, c.rng);
             ComplexMatrix block = complement_apply(spec, rho).matrix;
             worst = std::max(worst,
                              max_abs_diff(block, complement_apply_kraus(spec, rho)));
             worst = std::max(worst, std::abs(block.trace() - cplx(1.0)));
           }
         }
         return judge(worst, c.tol.algebra);
       }},
      {"complement-spectrum",
       [](CheckContext& c) {
         double worst = 0.0;
         ComplexMatrix mixed = ComplexMatrix::Identity(c.d, c.d) / double(c.d);
         for (double x : c.xs) {
           auto spec = ChannelSpec::noisy(c.d, x);
           auto numeric = hermitian_eigenvalue_list(complement_apply(spec, mixed).matrix);
           auto closed = complement_spectrum_maximally_mixed(spec).expanded();
           std::sort(numeric.begin(), numeric.end());
           std::sort(closed.begin(), closed.end());
           for (std::size_t k = 0; k < numeric.size(); ++k)
             worst = std::max(worst, std::abs(numeric[k] - closed[k]));
         }
         return judge(worst, c.tol.algebra);
       }},
      {"decompose",
       [](CheckContext& c) {
         if (c.d % 2 != 0) {
           return CheckOutcome{Status::kSkip, "OddDimension: needs an even d"};
         }
         double worst = 0.0;
         MixedUnitaryDecomposition m = unitary_kraus(c.d);
         for (const auto& u : m.unitaries)
           worst = std::max(worst, max_abs(u.adjoint() * u -
                                           ComplexMatrix::Identity(c.d, c.d)));
         for (double x : c.xs) {
           MixedUnitaryDecomposition n = noisy_mixed_unitary(c.d, x);
           auto spec = ChannelSpec::noisy(c.d, x);
           for (int t = 0; t < 3; ++t) {
             ComplexMatrix rho = random_density_matrix(c.d, c.rng);
             worst = std::max(worst, max_abs_diff(n.apply(rho), whls::apply(spec, rho)));
           }
         }
         return judge(worst, c.tol.algebra);
       }},
      {"c1",
       [](CheckContext& c) {
         double worst = 0.0;
         for (double x : c.xs) {
           double c1 = classical_capacity_one_shot(c.d, x);
           worst = std::max(worst,
                            std::abs(c1 - classical_capacity_one_shot_numeric(c.d, x)));
           worst = std::max(worst, c1 - entanglement_assisted_capacity(c.d, x));
         }
         return judge(worst, c.tol.capacity);
       }},
      {"cea",
       [](CheckContext& c) {
         double worst = 0.0;
         for (double x : c.xs)
           worst = std::max(worst, std::abs(entanglement_assisted_capacity(c.d, x) -
                                            entanglement_assisted_capacity_numeric(c.d, x)));
         return judge(worst, c.tol.capacity);
       }},
      {"coherent",
       [](CheckContext& c) {
         double worst = 0.0;
         for (double x : c.xs) {
           auto spec = ChannelSpec::noisy(c.d, x);
           for (int t = 0; t < 5; ++t) {
             auto r = random_probability_vector(c.d, c.rng);
             ComplexMatrix rho = ComplexMatrix::Zero(c.d, c.d);
             for (int i = 0; i < c.d; ++i) rho(i, i) = r[i];
             worst = std::max(worst, std::abs(coherent_information_diagonal(c.d, x, r) -
                                              coherent_information(spec, rho)));
           }
         }
         return judge(worst, c.tol.capacity);
       }},
      {"min-output",
       [](CheckContext& c) {
         double worst = 0.0;
         for (double x : c.xs) {
           auto spec = ChannelSpec::noisy(c.d, x);
           double closed = min_output_entropy(c.d, x);
           for (int t = 0; t < 50; ++t) {
             ComplexVector psi = random_pure_state(c.d, c.rng);
             double s = von_neumann_entropy(whls::apply(spec, psi * psi.adjoint()));
             worst = std::max(worst, closed - s);
           }
         }
         return judge(worst, c.tol.capacity);
       }},
      {"critical",
       [](CheckContext& c) {
         double x0 = 0.0;
         try {
           x0 = critical_x(c.d);
         } catch (const Error& e) {
           if (e.code() == ErrorCode::kNoSignChange) {
             return CheckOutcome{Status::kSkip, e.what()};
           }
           throw;
         }
         char buf[96];
         std::snprintf(buf, sizeof buf, "x0 = %.9f", x0);
         bool ok = critical_function(c.d, x0 - 0.01) > 0.0 &&
                   critical_function(c.d, x0 + 0.01) < 0.0 && x0 > 0.38 &&
                   x0 < 0.42;
         return CheckOutcome{ok ? Status::kPass : Status::kFail, buf};
       }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& verify_check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : check_table()) n.push_back(name);
    return n;
  }();
  return names;
}

std::vector<VerifyResult> run_verify(const SweepConfig& config,
                                     const std::vector<std::string>& checks,
                                     int jobs) {
  config.validate();
  for (const auto& name : checks) {
    const auto& names = verify_check_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw UsageError("unknown check " + name);
    }
  }
  struct Task {
    std::size_t check;
    int d;
  };
  std::vector<Task> tasks;
  const auto& table = check_table();
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (!checks.empty() &&
        std::find(checks.begin(), checks.end(), table[k].first) == checks.end())
      continue;
    for (int d : config.d_values) tasks.push_back({k, d});
  }
  const bool bad_tol =
      !(config.tolerances.algebra > 0.0) || !(config.tolerances.capacity > 0.0);
  const auto xs = config.x_values();
  return parallel_map<VerifyResult>(tasks.size(), jobs, [&](std::size_t i) {
    const Task& task = tasks[i];
    VerifyResult r;
    r.check = table[task.check].first;
    r.d = task.d;
    if (bad_tol) {
      r.status = Status::kFail;
      r.detail = "tolerances must be positive";
      return r;
    }
    CheckContext ctx{task.d, xs, config.tolerances,
                     Rng(config.seed + 1000003ULL * task.check +
                         static_cast<std::uint64_t>(task.d))};
    try {
      CheckOutcome o = table[task.check].second(ctx);
      r.status = o.status;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.status = Status::kFail;
      r.detail = e.what();
    }
    return r;
  });
}

// ---------------------------------------------------------------------------
// Subcommands

namespace {

struct Options {
  std::vector<std::string> d;
  std::vector<double> x;
  std::optional<std::string> x_grid;
  std::optional<double> eta;
  std::optional<double> j;
  std::string family = "NOISY_SO_D_LS";
  std::optional<std::string> format;
  std::string output;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_algebra;
  std::optional<double> tol_capacity;
  int jobs = 0;
  bool emit_critical_plot = false;
  bool ppt = false;
  std::vector<std::string> checks;
  std::string rho_path;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> parse_dimensions(const std::vector<std::string>& tokens) {
  std::vector<int> out;
  for (const auto& tok : tokens) {
    auto dots = tok.find("..");
    try {
      if (dots != std::string::npos) {
        int lo = std::stoi(tok.substr(0, dots));
        int hi = std::stoi(tok.substr(dots + 2));
        if (lo > hi) throw UsageError("empty dimension range " + tok);
        for (int d = lo; d <= hi; ++d) out.push_back(d);
      } else {
        std::size_t used = 0;
        int d = std::stoi(tok, &used);
        if (used != tok.size()) throw UsageError("bad dimension " + tok);
        out.push_back(d);
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad dimension " + tok);
    }
  }
  return out;
}

XGrid parse_grid(const std::string& text) {
  XGrid g;
  double a, b, c;
  char tail;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &a, &b, &c, &tail) != 3) {
    throw UsageError("--x-grid expects start:stop:step, got " + text);
  }
  g.start = a;
  g.stop = b;
  g.step = c;
  return g;
}

/// Config file first, then flag overrides.
SweepConfig resolve_config(const Options& o) {
  SweepConfig c;
  if (!o.config_path.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(o.config_path));
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    c = config_from_json(j);
  }
  if (!o.d.empty()) c.d_values = parse_dimensions(o.d);
  if (o.x_grid) c.x_grid = parse_grid(*o.x_grid);
  if (o.seed) c.seed = *o.seed;
  if (o.format) c.output_format = *o.format;
  if (o.tol_algebra) c.tolerances.algebra = *o.tol_algebra;
  if (o.tol_capacity) c.tolerances.capacity = *o.tol_capacity;
  c.validate();
  return c;
}

std::vector<double> resolve_x(const Options& o, const SweepConfig& c) {
  if (!o.x.empty()) return o.x;
  return c.x_values();
}

int single_d(const SweepConfig& c, const Options& o, int fallback) {
  if (o.d.empty()) return fallback;
  if (c.d_values.size() != 1) throw UsageError("this command takes a single --d");
  return c.d_values.front();
}

double single_x(const Options& o, double fallback) {
  if (o.x.empty()) return fallback;
  if (o.x.size() != 1) throw UsageError("this command takes a single --x");
  return o.x.front();
}

std::string render(const Table& t, const SweepConfig& c) {
  return c.output_format == "json" ? render_json(t) : render_csv(t);
}

Table matrix_table(const ComplexMatrix& m) {
  Table t{{"row", "col", "re", "im"}, {}};
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      t.rows.push_back({Cell::integer(r + 1), Cell::integer(k + 1),
                        Cell::number(m(r, k).real()), Cell::number(m(r, k).imag())});
  return t;
}

nlohmann::json matrix_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back({std::strtod(format_number(m(r, k).real()).c_str(), nullptr),
                     std::strtod(format_number(m(r, k).imag()).c_str(), nullptr)});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string cmd_spectrum(const Options& o, const SweepConfig& c) {
  const int d = single_d(c, o, 3);
  const double x = single_x(o, 0.0);
  ChannelSpectrum s = channel_spectrum(ChannelSpec::noisy(d, x));
  Table t{{"eigenvalue", "multiplicity", "class"}, {}};
  bool uniform = true;
  for (const auto& e : s.entries)
    uniform = uniform && e.eigenvalue == s.entries.front().eigenvalue;
  if (uniform) {
    t.rows.push_back({Cell::number(s.entries.front().eigenvalue),
                      Cell::integer(s.total_multiplicity()), Cell::string("all")});
  } else {
    for (const auto& e : s.entries)
      t.rows.push_back({Cell::number(e.eigenvalue), Cell::integer(e.multiplicity),
                        Cell::string(std::string(basis_class_name(e.basis_class)))});
  }
  return render(t, c);
}

struct Point {
  int d;
  double x;
};

std::vector<Point> grid_points(const SweepConfig& c, const std::vector<double>& xs) {
  std::vector<Point> pts;
  for (int d : c.d_values)
    for (double x : xs) pts.push_back({d, x});
  return pts;
}

std::string cmd_determinant(const Options& o, const SweepConfig& c, int jobs) {
  auto pts = grid_points(c, resolve_x(o, c));
  auto verdicts = parallel_map<DivisibilityVerdict>(pts.size(), jobs, [&](std::size_t i) {
    return determinant(ChannelSpec::noisy(pts[i].d, pts[i].x));
  });
  Table t{{"d", "x", "det", "not_divisible"}, {}};
  for (std::size_t i = 0; i < pts.size(); ++i)
    t.rows.push_back({Cell::integer(pts[i].d), Cell::number(pts[i].x),
                      Cell::number(verdicts[i].determinant),
                      Cell::boolean(verdicts[i].not_infinitesimally_divisible)});
  return render(t, c);
}

Table critical_table(const std::vector<int>& dims, int jobs) {
  auto roots = parallel_map<double>(dims.size(), jobs,
                                    [&](std::size_t i) { return critical_x(dims[i]); });
  Table t{{"d", "x0"}, {}};
  for (std::size_t i = 0; i < dims.size(); ++i)
    t.rows.push_back({Cell::integer(dims[i]), Cell::number(roots[i])});
  return t;
}

std::string cmd_capacities(const Options& o, const SweepConfig& c, int jobs) {
  if (o.emit_critical_plot) return render(critical_table(c.d_values, jobs), c);
  auto pts = grid_points(c, resolve_x(o, c));
  auto reports = parallel_map<CapacityReport>(pts.size(), jobs, [&](std::size_t i) {
    return capacity_report(pts[i].d, pts[i].x);
  });
  Table t{{"d", "x", "C1_bits", "Cea_bits", "Jmixed_bits"}, {}};
  for (const auto& r : reports)
    t.rows.push_back({Cell::integer(r.d), Cell::number(r.x), Cell::number(r.c1),
                      Cell::number(r.c_ea), Cell::number(r.j_coherent_mixed)});
  return render(t, c);
}

std::string cmd_critical(const SweepConfig& c, int jobs) {
  return render(critical_table(c.d_values, jobs), c);
}

std::string cmd_decompose(const Options& o, const SweepConfig& c) {
  const int d = single_d(c, o, 4);
  const double x = single_x(o, 1.0);
  MixedUnitaryDecomposition m = noisy_mixed_unitary(d, x);
  if (c.output_format == "json") {
    std::string out = "[";
    for (std::size_t k = 0; k < m.size(); ++k) {
      nlohmann::ordered_json entry;
      entry["weight"] = std::strtod(format_number(m.weights[k]).c_str(), nullptr);
      entry["matrix"] = matrix_json(m.unitaries[k]);
      out += (k ? ",\n " : "\n ") + entry.dump();
    }
    return out + "\n]\n";
  }
  Table t{{"index", "weight", "row", "col", "re", "im"}, {}};
  for (std::size_t k = 0; k < m.size(); ++k) {
    const auto& u = m.unitaries[k];
    for (Eigen::Index r = 0; r < u.rows(); ++r)
      for (Eigen::Index q = 0; q < u.cols(); ++q)
        t.rows.push_back({Cell::integer(static_cast<long long>(k) + 1),
                          Cell::number(m.weights[k]), Cell::integer(r + 1),
                          Cell::integer(q + 1), Cell::number(u(r, q).real()),
                          Cell::number(u(r, q).imag())});
  }
  return render_csv(t);
}

std::string render_matrix(const ComplexMatrix& m, const SweepConfig& c,
                          nlohmann::ordered_json header) {
  if (c.output_format == "json") {
    header["matrix"] = matrix_json(m);
    return header.dump() + "\n";
  }
  return render_csv(matrix_table(m));
}

std::string cmd_complement(const Options& o, const SweepConfig& c) {
  const int d = single_d(c, o, 3);
  const double x = single_x(o, 0.5);
  ChannelSpec spec = ChannelSpec::noisy(d, x);
  spec.validate();
  ComplexMatrix rho = ComplexMatrix::Identity(d, d) / double(d);
  if (!o.rho_path.empty()) rho = load_matrix(read_file(o.rho_path));
  ComplementOutput env = complement_apply(spec, rho);
  nlohmann::ordered_json header;
  header["d"] = d;
  header["x"] = x;
  header["environment_dim"] = env.matrix.rows();
  return render_matrix(env.matrix, c, header);
}

ChannelSpec spec_from_options(const Options& o, const SweepConfig& c) {
  auto family = parse_family(o.family);
  if (!family) throw UsageError("unknown family " + o.family);
  ChannelSpec spec;
  switch (*family) {
    case Family::kSoLs: spec = ChannelSpec::so_ls(single_d(c, o, 3)); break;
    case Family::kUPlus: spec = ChannelSpec::u_plus(single_d(c, o, 3)); break;
    case Family::kNoisySoLs:
      spec = ChannelSpec::noisy(single_d(c, o, 3), single_x(o, 0.5));
      break;
    case Family::kWhEta:
      spec = ChannelSpec::wh_eta(single_d(c, o, 3), o.eta.value_or(0.0));
      break;
    case Family::kSpinLs: {
      if (!o.j) throw UsageError("SPIN_J_LS needs --j");
      spec = ChannelSpec::spin(*o.j);
      if (!o.d.empty() && single_d(c, o, spec.d) != spec.d) {
        throw UsageError("SPIN_J_LS needs d = 2j + 1");
      }
      break;
    }
  }
  spec.validate();
  return spec;
}

std::string cmd_choi(const Options& o, const SweepConfig& c) {
  ChannelSpec spec = spec_from_options(o, c);
  if (o.ppt) {
    double lowest = choi_partial_transpose_min_eigenvalue(spec);
    Table t{{"family", "d", "min_pt_eigenvalue", "ppt"}, {}};
    t.rows.push_back({Cell::string(std::string(family_name(spec.family))),
                      Cell::integer(spec.d), Cell::number(lowest),
                      Cell::boolean(lowest >= -kNegativeEigenvalueTol)});
    return render(t, c);
  }
  nlohmann::ordered_json header = spec_to_json(spec);
  return render_matrix(choi_matrix(spec), c, header);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidSpec:
    case ErrorCode::kUnsupportedFamily:
    case ErrorCode::kOddDimension:
    case ErrorCode::kDimensionTooSmall:
    case ErrorCode::kInvalidSpin:
    case ErrorCode::kParseError:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kNotAProbabilityVector:
    case ErrorCode::kWrongKind:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw UsageError("cannot write " + o.output);
  file << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Landau-Streater and Werner-Holevo channel toolkit"};
  app.require_subcommand(1);
  Options o;
  o.jobs = default_jobs();

  auto common = [&](CLI::App* sub) {
    sub->add_option("--d", o.d, "dimension(s); list a,b or range a..b")
        ->delimiter(',');
    sub->add_option("--x", o.x, "noise parameter(s) in [0, 1]")->delimiter(',');
    sub->add_option("--x-grid", o.x_grid, "x grid as start:stop:step");
    sub->add_option("--format", o.format, "csv or json");
    sub->add_option("--output", o.output, "write to this path instead of stdout");
    sub->add_option("--config", o.config_path, "JSON sweep configuration");
    sub->add_option("--seed", o.seed, "seed for randomized checks");
    sub->add_option("--jobs", o.jobs, "worker threads (default: WHLS_JOBS or cores)");
  };

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues on the X/Y/Z/I basis");
  auto* det = app.add_subcommand("determinant", "determinant and divisibility over a grid");
  auto* caps = app.add_subcommand("capacities", "C1, Cea and J over a grid");
  auto* crit = app.add_subcommand("critical-x", "critical noise x0 per dimension");
  auto* decomp = app.add_subcommand("decompose", "mixed-unitary decomposition (even d)");
  auto* comp = app.add_subcommand("complement", "complementary channel output");
  auto* choi = app.add_subcommand("choi", "Choi matrix or its PPT test");
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  for (auto* sub : {spectrum, det, caps, crit, decomp, comp, choi, verify}) common(sub);
  caps->add_flag("--emit-critical-plot", o.emit_critical_plot,
                 "emit the (d, x0) table instead");
  comp->add_option("--rho", o.rho_path, "input matrix as JSON [[re, im], ...] rows");
  choi->add_option("--family", o.family, "SO_D_LS, NOISY_SO_D_LS, SPIN_J_LS, U_D_PLUS, WH_ETA");
  choi->add_option("--eta", o.eta, "WH_ETA parameter in [-1, 1]");
  choi->add_option("--j", o.j, "spin for SPIN_J_LS");
  choi->add_flag("--ppt", o.ppt, "report the partial-transpose test only");
  verify->add_option("--checks", o.checks, "subset of checks")->delimiter(',');
  verify->add_option("--tol-algebra", o.tol_algebra, "tolerance for algebraic checks");
  verify->add_option("--tol-capacity", o.tol_capacity, "tolerance for capacity checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    SweepConfig c = resolve_config(o);
    const int jobs = std::max(1, o.jobs);
    std::string text;
    if (spectrum->parsed()) {
      text = cmd_spectrum(o, c);
    } else if (det->parsed()) {
      text = cmd_determinant(o, c, jobs);
    } else if (caps->parsed()) {
      text = cmd_capacities(o, c, jobs);
    } else if (crit->parsed()) {
      text = cmd_critical(c, jobs);
    } else if (decomp->parsed()) {
      text = cmd_decompose(o, c);
    } else if (comp->parsed()) {
      text = cmd_complement(o, c);
    } else if (choi->parsed()) {
      text = cmd_choi(o, c);
    } else if (verify->parsed()) {
      auto results = run_verify(c, o.checks, jobs);
      Table t{{"check", "d", "status", "detail"}, {}};
      const VerifyResult* first_failure = nullptr;
      for (const auto& r : results) {
        const char* status = r.status == Status::kPass   ? "PASS"
                             : r.status == Status::kSkip ? "SKIP"
                                                         : "FAIL";
        t.rows.push_back({Cell::string(r.check), Cell::integer(r.d),
                          Cell::string(status), Cell::string(r.detail)});
        if (r.status == Status::kFail && !first_failure) first_failure = &r;
      }
      emit(render(t, c), o, out);
      if (first_failure) {
        err << "verify: first failure: " << first_failure->check
            << " (d = " << first_failure->d << "): " << first_failure->detail
            << "\n";
        return kExitFailure;
      }
      return kExitOk;
    }
    emit(text, o, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace cli
}  // namespace whls
