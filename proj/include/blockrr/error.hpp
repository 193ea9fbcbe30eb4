// Copyright 2026 The BlockRR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BLOCKRR_ERROR_HPP_
#define BLOCKRR_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace blockrr {

// Stable error identifiers. Library operations throw Error with one of
// these codes; the CLI maps them onto exit codes.
enum class ErrorCode {
  kOverlappingPartition,
  kDeltaOutOfRange,
  kInconsistentOutputPartition,
  kEmptyOutputWithNonemptySource,
  kNonpositiveEpsilon,
  kDegenerateSystem,
  kLabelOutOfRange,
  kEmptyBins,
  kNonpositiveScale,
  kNonpositiveSigma,
  kLOutOfRange,
  kEmptySplit,
  kEmptyProfile,
  kMalformedMatrix,
  kUnknownMechanism,
  kNonpositiveN,
  kIdMismatch,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOverlappingPartition:
      return "OVERLAPPING_PARTITION";
    case ErrorCode::kDeltaOutOfRange:
      return "DELTA_OUT_OF_RANGE";
    case ErrorCode::kInconsistentOutputPartition:
      return "INCONSISTENT_OUTPUT_PARTITION";
    case ErrorCode::kEmptyOutputWithNonemptySource:
      return "EMPTY_OUTPUT_WITH_NONEMPTY_SOURCE";
    case ErrorCode::kNonpositiveEpsilon:
      return "NONPOSITIVE_EPSILON";
    case ErrorCode::kDegenerateSystem:
      return "DEGENERATE_SYSTEM";
    case ErrorCode::kLabelOutOfRange:
      return "LABEL_OUT_OF_RANGE";
    case ErrorCode::kEmptyBins:
      return "EMPTY_BINS";
    case ErrorCode::kNonpositiveScale:
      return "NONPOSITIVE_SCALE";
    case ErrorCode::kNonpositiveSigma:
      return "NONPOSITIVE_SIGMA";
    case ErrorCode::kLOutOfRange:
      return "L_OUT_OF_RANGE";
    case ErrorCode::kEmptySplit:
      return "EMPTY_SPLIT";
    case ErrorCode::kEmptyProfile:
      return "EMPTY_PROFILE";
    case ErrorCode::kMalformedMatrix:
      return "MALFORMED_MATRIX";
    case ErrorCode::kUnknownMechanism:
      return "UNKNOWN_MECHANISM";
    case ErrorCode::kNonpositiveN:
      return "NONPOSITIVE_N";
    case ErrorCode::kIdMismatch:
      return "ID_MISMATCH";
  }
  return "UNKNOWN_ERROR";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace blockrr

#endif  // BLOCKRR_ERROR_HPP_
