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

// Seeded Monte Carlo simulation of the re-identification games. Trial t of a
// run draws all of its randomness from a counter-based stream keyed by
// (seed, t), so the result is a pure function of the arguments, the seed and
// the trial count, whatever the number of workers.

#ifndef REID_SIMULATION_H_
#define REID_SIMULATION_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "reid/decomposition.h"
#include "reid/distribution.h"
#include "reid/mechanism.h"

namespace reid {

// SplitMix64 output function evaluated at key + counter * golden gamma.
class TrialRng {
 public:
  TrialRng(uint64_t seed, uint64_t trial);

  uint64_t NextU64();
  // Uniform in [0, 1) with 53 random bits.
  double NextDouble();
  // Uniform in [0, bound), bound >= 1, without modulo bias.
  uint64_t Below(uint64_t bound);

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

// Inverse-CDF sampler over indices 0..size-1 of a distribution.
class IndexSampler {
 public:
  explicit IndexSampler(const std::vector<double>& probs);
  size_t Sample(TrialRng& rng) const;

 private:
  std::vector<double> cdf_;
};

struct SimulationOptions {
  uint64_t trials = 100000;
  uint64_t seed = 0;
  // 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
};

struct SimulationReport {
  double estimate = 0;
  uint64_t wins = 0;
  uint64_t trials = 0;
  double std_err = 0;
  double ci_low = 0;
  double ci_high = 0;
  uint64_t seed = 0;
  double wall_clock_ms = 0;
  unsigned workers = 0;

  // |estimate - target| <= sigmas * std_err.
  bool Within(double target, double sigmas = 4.0) const;
};

// Game 1: target drawn from P, n - 1 decoys from Q, uniform shuffle; the
// adversary ranks positions by P/Q with uniform tie-breaking and submits k
// guesses. Throws kZeroTrials, kZeroUsers, kBadGuessCount.
SimulationReport McGuessGame(const FloatDistribution& p,
                             const FloatDistribution& q, uint64_t n,
                             uint64_t k, const SimulationOptions& options,
                             double tol_tie = kDefaultTieTolerance);

enum class ShuffleAdversary {
  // Ranks positions by target(z) / Q_blanket(z).
  kRatioVsBlanket,
  // Exact posterior via permanents; Bayes-optimal for the given inputs.
  kExactPermanent,
};

std::string_view ShuffleAdversaryName(ShuffleAdversary adversary);

inline constexpr size_t kMaxExactPermanentUsers = 12;

// Game 2: user i's input is drawn from priors[i] (a point mass for a fixed
// input), passed through R, and the outputs are shuffled. Single guess.
// Throws kZeroTrials, kInstanceTooLarge, kSpaceMismatch, kZeroBlanket.
SimulationReport McShuffleGame(const FloatMechanism& mech,
                               const std::vector<FloatDistribution>& priors,
                               size_t target, ShuffleAdversary adversary,
                               const SimulationOptions& options);

// Game 3: N ~ 1 + Bin(n - 1, gamma) users; decoys drawn from Q_com; the
// ratio-ranking adversary guesses once. Throws kZeroTrials, kZeroUsers,
// kSpaceMismatch.
SimulationReport McReducedGame(const FloatMechanism& mech, uint64_t n,
                               const MixtureDecomposition<double>& decomp,
                               const FloatDistribution& target,
                               const SimulationOptions& options);

}  // namespace reid

#endif  // REID_SIMULATION_H_
