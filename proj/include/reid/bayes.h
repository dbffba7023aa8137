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

// Closed-form success probabilities of the Bayes-optimal re-identification
// adversary in the basic setting: one sample from P hidden among n - 1
// samples from Q, shuffled uniformly.

#ifndef REID_BAYES_H_
#define REID_BAYES_H_

#include <cstdint>
#include <vector>

#include "reid/distribution.h"
#include "reid/ratio_profile.h"

namespace reid {

// beta_n = f_inf + (1/n) * sum_t t * (G(t)^n - G(t-)^n). Throws kZeroUsers.
template <typename T>
T BetaN(const RatioProfile<T>& profile, uint64_t n);

// {beta_1, ..., beta_{n_max}} computed with running powers of G.
template <typename T>
std::vector<T> BetaNSequence(const RatioProfile<T>& profile, uint64_t n_max);

// Success probability with k guesses. Ties are broken uniformly at random:
// given the target's atom t, with b decoys strictly above t and e decoys tied
// at t, the adversary wins with probability min(max(k - b, 0), e + 1)/(e + 1).
// Throws kZeroUsers, kBadGuessCount.
template <typename T>
T BetaNK(const RatioProfile<T>& profile, uint64_t n, uint64_t k);

template <typename T>
struct AdvantageReport {
  uint64_t n = 0;
  T beta;
  T adv_plus;   // beta - 1/n
  T adv_times;  // n * beta
  T tv_lower;   // TV / n
  T tv_upper;   // TV
};

// Throws kInvariantViolation if tv_lower <= adv_plus <= tv_upper fails
// for some n >= 2.
template <typename T>
AdvantageReport<T> Advantage(const Distribution<T>& p,
                             const Distribution<T>& q, uint64_t n,
                             double tol_tie = kDefaultTieTolerance);

template <typename T>
class AsymptoticsReport {
 public:
  explicit AsymptoticsReport(RatioProfile<T> profile)
      : profile_(std::move(profile)) {}

  const T& f_inf() const { return profile_.f_inf(); }
  const T& max_ratio() const { return profile_.max_ratio(); }
  // f_inf + M/n - beta_n; nonnegative and o(1/n).
  T Remainder(uint64_t n) const;

 private:
  RatioProfile<T> profile_;
};

template <typename T>
AsymptoticsReport<T> Asymptotics(const Distribution<T>& p,
                                 const Distribution<T>& q,
                                 double tol_tie = kDefaultTieTolerance);

// beta_n for the density pair P(x) = x + 1/2, Q(x) = 1 on [0, 1], discretized
// into m equal-width bins with exact bin masses. Throws kZeroUsers,
// kTooFewBins.
template <typename T>
T BetaNExample1(uint64_t n, uint64_t m);

}  // namespace reid

#endif  // REID_BAYES_H_
