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

// Exhaustive-enumeration ground truth. Nothing here uses the closed forms in
// bayes.h; the two are cross-checked in tests.

#ifndef REID_ORACLE_H_
#define REID_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "reid/distribution.h"

namespace reid {

inline constexpr size_t kMaxOracleSupport = 12;
inline constexpr uint64_t kMaxOracleUsers = 8;
inline constexpr size_t kMaxHetUsers = 7;
inline constexpr size_t kMaxHetOutputs = 6;
inline constexpr size_t kMaxPermanentSize = 12;

// Exact success probability of the ratio-ranking adversary with k guesses,
// by enumerating the target's value and the decoy count vector.
// Throws kInstanceTooLarge, kZeroUsers, kBadGuessCount.
Rational BruteForceBeta(const ExactDistribution& p, const ExactDistribution& q,
                        uint64_t n, uint64_t k);

// Exact Bayes-optimal top-k success for heterogeneous users: rows[i] is user
// i's output distribution (all over the same labels, in the same order) and
// `target` indexes the user being re-identified. Enumerates output multisets
// and evaluates each posterior with a permanent.
// Throws kInstanceTooLarge, kSpaceMismatch, kBadGuessCount.
template <typename T>
T BruteForceBetaHet(const std::vector<Distribution<T>>& rows, size_t target,
                    uint64_t k = 1);

// Permanent by Ryser's inclusion-exclusion formula. Throws kNotSquare,
// kTooLarge. The permanent of a 0x0 matrix is 1.
template <typename T>
T Permanent(const std::vector<std::vector<T>>& matrix);

}  // namespace reid

#endif  // REID_ORACLE_H_
