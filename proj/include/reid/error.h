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

#ifndef REID_ERROR_H_
#define REID_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace reid {

// Every failure the library reports carries one of these codes. The CLI maps
// each code to its own process exit status.
enum class ErrorCode {
  kNegativeProbability,
  kNotNormalized,
  kDuplicateLabel,
  kZeroSize,
  kNonpositiveExponent,
  kZeroUsers,
  kBadGuessCount,
  kTooFewBins,
  kBadArity,
  kNonpositiveEpsilon,
  kSpaceMismatch,
  kInfiniteEpsilon,
  kZeroBlanket,
  kInstanceTooLarge,
  kNotSquare,
  kTooLarge,
  kZeroTrials,
  kFileNotFound,
  kParseError,
  kUnknownCaseStudy,
  kInvalidArgument,
  // An internal consistency check failed; a bug, not bad input.
  kInvariantViolation,
};

std::string_view ErrorCodeName(ErrorCode code);

// Exit status used by the command-line tool for `code`. 0, 1 and 2 are
// reserved for success, failed self-checks and usage errors respectively.
int ExitCodeFor(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace reid

#endif  // REID_ERROR_H_
