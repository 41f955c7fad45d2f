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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace whls {

enum class ErrorCode {
  kNotSquare,
  kNotHermitian,
  kNotDensityMatrix,
  kDimensionMismatch,
  kDimensionTooSmall,
  kInvalidSpin,
  kWrongKind,
  kInvalidSpec,
  kUnsupportedFamily,
  kOddDimension,
  kEmptyKrausSet,
  kNotAProbabilityVector,
  kNoSignChange,
  kParseError,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNotDensityMatrix: return "NotDensityMatrix";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kDimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::kInvalidSpin: return "InvalidSpin";
    case ErrorCode::kWrongKind: return "WrongKind";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kUnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::kOddDimension: return "OddDimension";
    case ErrorCode::kEmptyKrausSet: return "EmptyKrausSet";
    case ErrorCode::kNotAProbabilityVector: return "NotAProbabilityVector";
    case ErrorCode::kNoSignChange: return "NoSignChange";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace whls
