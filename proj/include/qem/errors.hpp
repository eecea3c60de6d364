/* Copyright 2026 The QEM Bounds Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef QEM_ERRORS_HPP_
#define QEM_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace qem {

// Every failure the library reports. Values are stable: the C API exposes
// them as qem_status codes.
enum class ErrorCode : int {
  kOk = 0,
  // Validation errors (bad input).
  kInvalidArgument = 10,
  kDimensionMismatch = 11,
  kNotHermitian = 12,
  kNotUnitTrace = 13,
  kNotPositive = 14,
  kNotUnitary = 15,
  kNotTracePreserving = 16,
  kInvalidRate = 17,
  kInvalidDimension = 18,
  kDimensionNotPowerOfTwo = 19,
  kProductTooLarge = 20,
  kSingularBasis = 21,
  kNotInvertibleChannel = 22,
  kDuplicateNodes = 23,
  kBoostOutOfRange = 24,
  kNotInvolution = 25,
  kDominantEigenvalueTooSmall = 26,
  kInvalidSpread = 27,
  kInvalidShots = 28,
  kUnknownParameter = 29,
  kEmptyGrid = 30,
  kVacuousBound = 31,
  kParseError = 32,
  // Numerical failures (corrupted intermediate values).
  kNegativeRadicand = 50,
  kSupportViolation = 51,
  kNumericalMismatch = 52,
  kIoError = 60,
  kInternal = 99,
};

std::string_view error_code_name(ErrorCode code);

// True for codes that signal numerical corruption rather than bad input.
constexpr bool is_numerical(ErrorCode code) {
  return static_cast<int>(code) >= 50 && static_cast<int>(code) < 60;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace qem

#endif  // QEM_ERRORS_HPP_
