// Copyright 2026 The inkspan Authors
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

namespace inkspan {

enum class ErrorCode {
  kNonMonotoneCapacity,
  kNonPositiveDatum,
  kLengthMismatch,
  kUnknownItem,
  kSizeLimit,
  kBudgetExceeded,
  kNumericalFailure,
  kNotTimeInvariant,
  kNotDivisible,
  kOverflow,
  kBadInput,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonMonotoneCapacity: return "NonMonotoneCapacity";
    case ErrorCode::kNonPositiveDatum: return "NonPositiveDatum";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kUnknownItem: return "UnknownItem";
    case ErrorCode::kSizeLimit: return "SizeLimit";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kNotTimeInvariant: return "NotTimeInvariant";
    case ErrorCode::kNotDivisible: return "NotDivisible";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kBadInput: return "BadInput";
  }
  return "Unknown";
}

// All library failures are reported through this one exception type; the
// code lets callers (notably the CLI) map failures onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace inkspan
