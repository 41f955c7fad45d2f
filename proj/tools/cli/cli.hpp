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
 * @file cli.hpp
 * @brief Command-line front end: subcommands spectrum, determinant,
 *        capacities, critical-x, decompose, complement, choi and verify.
 *
 * Exit codes: 0 success, 1 numerical or invariant failure, 2 usage error.
 * Tables are written as CSV (12 significant digits) or as JSON arrays of
 * objects with the same columns.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

namespace whls {
namespace cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Raised for malformed flags or configuration; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct XGrid {
  double start = 0.0;
  double stop = 1.0;
  double step = 0.1;
};

struct Tolerances {
  double algebra = 1e-10;
  double capacity = 1e-9;
};

struct SweepConfig {
  std::vector<int> d_values{2, 3, 4, 5, 6, 7, 8};
  XGrid x_grid;
  Tolerances tolerances;
  std::uint64_t seed = 2026;
  std::string output_format = "csv";

  /// Throws UsageError when step <= 0, start > stop, a d is below 2 or the
  /// format is unknown.
  void validate() const;

  /// start, start + step, ... up to stop, each rounded to 12 decimals.
  std::vector<double> x_values() const;
};

SweepConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SweepConfig& c);

/// "%.12g", with -0 printed as 0.
std::string format_number(double v);

struct Cell {
  enum class Kind { kNumber, kInteger, kString, kBool };
  Kind kind = Kind::kString;
  std::string text;

  static Cell number(double v);
  static Cell integer(long long v);
  static Cell string(std::string s);
  static Cell boolean(bool b);
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string render_csv(const Table& t);
std::string render_json(const Table& t);

/// Worker count from WHLS_JOBS, else the hardware concurrency, at least 1.
int default_jobs();

/// fn(0) .. fn(n-1) on up to `jobs` threads; results keep index order. The
/// exception of the lowest failing index is rethrown.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, int jobs, F&& fn) {
  std::vector<T> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t count =
      std::max<std::size_t>(1, std::min<std::size_t>(jobs > 0 ? jobs : 1, n));
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < count; ++t) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

struct VerifyResult {
  std::string check;
  int d = 0;
  enum class Status { kPass, kFail, kSkip } status = Status::kPass;
  std::string detail;
};

/// Names accepted by --checks, in report order.
const std::vector<std::string>& verify_check_names();

/// Runs the selected checks (all when empty) for every d of the config.
std::vector<VerifyResult> run_verify(const SweepConfig& config,
                                     const std::vector<std::string>& checks,
                                     int jobs);

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace cli
}  // namespace whls
