// Copyright 2026 The shuffle-reid Authors
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

#include "reid/error.h"

namespace reid {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeProbability: return "NegativeProbability";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kDuplicateLabel: return "DuplicateLabel";
    case ErrorCode::kZeroSize: return "ZeroSize";
    case ErrorCode::kNonpositiveExponent: return "NonpositiveExponent";
    case ErrorCode::kZeroUsers: return "ZeroUsers";
    case ErrorCode::kBadGuessCount: return "BadGuessCount";
    case ErrorCode::kTooFewBins: return "TooFewBins";
    case ErrorCode::kBadArity: return "BadArity";
    case ErrorCode::kNonpositiveEpsilon: return "NonpositiveEpsilon";
    case ErrorCode::kSpaceMismatch: return "SpaceMismatch";
    case ErrorCode::kInfiniteEpsilon: return "InfiniteEpsilon";
    case ErrorCode::kZeroBlanket: return "ZeroBlanket";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kZeroTrials: return "ZeroTrials";
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnknownCaseStudy: return "UnknownCaseStudy";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvariantViolation: return 1;
    case ErrorCode::kFileNotFound: return 3;
    case ErrorCode::kParseError: return 4;
    default: return 10 + static_cast<int>(code);
  }
}

}  // namespace reid
