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

#include "qem/errors.hpp"

namespace qem {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNotUnitTrace: return "NotUnitTrace";
    case ErrorCode::kNotPositive: return "NotPositive";
    case ErrorCode::kNotUnitary: return "NotUnitary";
    case ErrorCode::kNotTracePreserving: return "NotTracePreserving";
    case ErrorCode::kInvalidRate: return "InvalidRate";
    case ErrorCode::kInvalidDimension: return "InvalidDimension";
    case ErrorCode::kDimensionNotPowerOfTwo: return "DimensionNotPowerOfTwo";
    case ErrorCode::kProductTooLarge: return "ProductTooLarge";
    case ErrorCode::kSingularBasis: return "SingularBasis";
    case ErrorCode::kNotInvertibleChannel: return "NotInvertibleChannel";
    case ErrorCode::kDuplicateNodes: return "DuplicateNodes";
    case ErrorCode::kBoostOutOfRange: return "BoostOutOfRange";
    case ErrorCode::kNotInvolution: return "NotInvolution";
    case ErrorCode::kDominantEigenvalueTooSmall: return "DominantEigenvalueTooSmall";
    case ErrorCode::kInvalidSpread: return "InvalidSpread";
    case ErrorCode::kInvalidShots: return "InvalidShots";
    case ErrorCode::kUnknownParameter: return "UnknownParameter";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kVacuousBound: return "VacuousBound";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kNegativeRadicand: return "NegativeRadicand";
    case ErrorCode::kSupportViolation: return "SupportViolation";
    case ErrorCode::kNumericalMismatch: return "NumericalMismatch";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace qem
