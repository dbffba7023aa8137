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

#include "reid/simulation.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "reid/error.h"
#include "reid/oracle.h"
#include "reid/ratio_profile.h"

namespace reid {
namespace {

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

uint64_t Mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Runs `trial(rng)` for every trial index, split into contiguous blocks over
// the workers; win counts are integers, so the sum is order independent.
SimulationReport RunTrials(const SimulationOptions& options,
                           const std::function<bool(TrialRng&)>& trial) {
  if (options.trials == 0) {
    throw Error(ErrorCode::kZeroTrials, "trials must be at least 1");
  }
  unsigned workers = options.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<uint64_t>(workers, options.trials));

  const auto start = std::chrono::steady_clock::now();
  std::vector<uint64_t> wins(workers, 0);
  auto run_block = [&](unsigned w) {
    const uint64_t lo = options.trials * w / workers;
    const uint64_t hi = options.trials * (w + 1) / workers;
    uint64_t local = 0;
    for (uint64_t t = lo; t < hi; ++t) {
      TrialRng rng(options.seed, t);
      if (trial(rng)) ++local;
    }
    wins[w] = local;
  };
  if (workers == 1) {
    run_block(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run_block, w);
    for (auto& th : threads) th.join();
  }
  const auto stop = std::chrono::steady_clock::now();

  SimulationReport report;
  report.trials = options.trials;
  for (uint64_t w : wins) report.wins += w;
  const auto trials = static_cast<double>(report.trials);
  report.estimate = static_cast<double>(report.wins) / trials;
  report.std_err =
      std::sqrt(report.estimate * (1.0 - report.estimate) / trials);
  report.ci_low = std::max(0.0, report.estimate - 1.96 * report.std_err);
  report.ci_high = std::min(1.0, report.estimate + 1.96 * report.std_err);
  report.seed = options.seed;
  report.workers = workers;
  report.wall_clock_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

void RequireUsers(uint64_t n) {
  if (n == 0) throw Error(ErrorCode::kZeroUsers, "n must be at least 1");
}

// Ranks labels by likelihood ratio class; kInfiniteClass ranks highest.
struct RatioRanking {
  std::vector<double> p;  // aligned with the universe
  std::vector<double> q;
  std::vector<int64_t> rank;

  RatioRanking(const FloatDistribution& p_dist, const FloatDistribution& q_dist,
               double tol_tie) {
    const auto profile = RatioProfile<double>::Build(p_dist, q_dist, tol_tie);
    const auto top = static_cast<int64_t>(profile.atoms().size());
    for (size_t i = 0; i < profile.universe().size(); ++i) {
      p.push_back(p_dist.ProbOf(profile.universe()[i]));
      q.push_back(q_dist.ProbOf(profile.universe()[i]));
      const int cls = profile.label_class()[i];
      rank.push_back(cls == RatioProfile<double>::kInfiniteClass ? top : cls);
    }
  }
};

// One play of game 1 with `users` users: the target sits at a uniform
// position among the shuffled outputs; the adversary submits the k
// highest-ranked positions, breaking ties uniformly. Only the number of
// decoys above and tied with the target matters for the outcome.
bool PlayGuessGame(const RatioRanking& ranking, const IndexSampler& p_sampler,
                   const IndexSampler& q_sampler, uint64_t users, uint64_t k,
                   TrialRng& rng) {
  const int64_t target_rank = ranking.rank[p_sampler.Sample(rng)];
  uint64_t above = 0, tied = 0;
  for (uint64_t d = 1; d < users; ++d) {
    const int64_t r = ranking.rank[q_sampler.Sample(rng)];
    if (r > target_rank) ++above;
    if (r == target_rank) ++tied;
  }
  if (above >= k) return false;
  // The tied block is ordered uniformly at random; the target is picked if
  // its place in that block is within the remaining k - above guesses.
  return rng.Below(tied + 1) < k - above;
}

std::vector<double> LiftRow(const FloatMechanism& mech,
                            const FloatDistribution& prior) {
  std::vector<double> out(mech.num_outputs(), 0.0);
  for (size_t i = 0; i < prior.size(); ++i) {
    const size_t x = mech.RequireInput(prior.label(i));
    for (size_t y = 0; y < out.size(); ++y) out[y] += prior.prob(i) * mech.at(x, y);
  }
  return out;
}

bool RelativelyClose(double a, double b) {
  return std::fabs(a - b) <= 1e-12 * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

TrialRng::TrialRng(uint64_t seed, uint64_t trial)
    : key_(Mix(Mix(seed) ^ (trial * kGolden + kGolden))) {}

uint64_t TrialRng::NextU64() { return Mix(key_ + (++counter_) * kGolden); }

double TrialRng::NextDouble() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

uint64_t TrialRng::Below(uint64_t bound) {
  if (bound <= 1) return 0;
  // Lemire's multiply-shift with rejection.
  __uint128_t m = static_cast<__uint128_t>(NextU64()) * bound;
  auto low = static_cast<uint64_t>(m);
  if (low < bound) {
    const uint64_t threshold = -bound % bound;
    while (low < threshold) {
      m = static_cast<__uint128_t>(NextU64()) * bound;
      low = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

IndexSampler::IndexSampler(const std::vector<double>& probs) {
  cdf_.reserve(probs.size());
  double cum = 0;
  for (double v : probs) {
    cum += v;
    cdf_.push_back(cum);
  }
}

size_t IndexSampler::Sample(TrialRng& rng) const {
  // upper_bound never lands on a zero-mass entry; rounding can push u onto
  // the total, in which case fall back to the last entry with mass.
  const double u = rng.NextDouble() * cdf_.back();
  auto index = static_cast<size_t>(
      std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
  if (index == cdf_.size()) {
    index = cdf_.size() - 1;
    while (index > 0 && cdf_[index] == cdf_[index - 1]) --index;
  }
  return index;
}

bool SimulationReport::Within(double target, double sigmas) const {
  const double n = static_cast<double>(trials);
  const double sigma =
      std::max(std_err, std::sqrt(std::max(0.0, target * (1.0 - target)) / n));
  return std::fabs(estimate - target) <= sigmas * sigma;
}

SimulationReport McGuessGame(const FloatDistribution& p,
                             const FloatDistribution& q, uint64_t n,
                             uint64_t k, const SimulationOptions& options,
                             double tol_tie) {
  RequireUsers(n);
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kBadGuessCount,
                "k must lie in [1, n], got k=" + std::to_string(k) +
                    " n=" + std::to_string(n));
  }
  const RatioRanking ranking(p, q, tol_tie);
  const IndexSampler p_sampler(ranking.p);
  const IndexSampler q_sampler(ranking.q);
  return RunTrials(options, [&](TrialRng& rng) {
    return PlayGuessGame(ranking, p_sampler, q_sampler, n, k, rng);
  });
}

std::string_view ShuffleAdversaryName(ShuffleAdversary adversary) {
  switch (adversary) {
    case ShuffleAdversary::kRatioVsBlanket: return "ratio_vs_blanket";
    case ShuffleAdversary::kExactPermanent: return "exact_permanent";
  }
  return "unknown";
}

SimulationReport McShuffleGame(const FloatMechanism& mech,
                               const std::vector<FloatDistribution>& priors,
                               size_t target, ShuffleAdversary adversary,
                               const SimulationOptions& options) {
  const size_t n = priors.size();
  RequireUsers(n);
  if (target >= n) {
    throw Error(ErrorCode::kInvalidArgument, "target index out of range");
  }
  if (adversary == ShuffleAdversary::kExactPermanent &&
      n > kMaxExactPermanentUsers) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "exact-permanent adversary limited to n <= " +
                    std::to_string(kMaxExactPermanentUsers));
  }
  // Per-user input samplers and the adversary's view of each user's output.
  std::vector<std::vector<size_t>> input_index(n);
  std::vector<IndexSampler> input_samplers;
  std::vector<std::vector<double>> lifted(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < priors[i].size(); ++j) {
      input_index[i].push_back(mech.RequireInput(priors[i].label(j)));
    }
    input_samplers.emplace_back(priors[i].probs());
    lifted[i] = LiftRow(mech, priors[i]);
  }
  std::vector<IndexSampler> row_samplers;
  for (size_t x = 0; x < mech.num_inputs(); ++x) {
    row_samplers.emplace_back(mech.kernel()[x]);
  }

  std::vector<double> blanket;
  if (adversary == ShuffleAdversary::kRatioVsBlanket) {
    blanket = BlanketDecompose(mech).q_com.probs();
  }
  const auto inf = std::numeric_limits<double>::infinity();

  // Score of value y at a position; positions with equal values score alike.
  auto scores_for = [&](const std::vector<size_t>& z) {
    std::vector<double> score(mech.num_outputs(), -1.0);
    for (size_t g = 0; g < z.size(); ++g) {
      const size_t v = z[g];
      if (score[v] >= 0) continue;
      const double own = lifted[target][v];
      if (adversary == ShuffleAdversary::kRatioVsBlanket) {
        score[v] = blanket[v] > 0 ? own / blanket[v] : (own > 0 ? inf : 0.0);
        continue;
      }
      std::vector<std::vector<double>> minor;
      minor.reserve(n - 1);
      for (size_t i = 0; i < n; ++i) {
        if (i == target) continue;
        std::vector<double> line;
        line.reserve(n - 1);
        for (size_t h = 0; h < z.size(); ++h) {
          if (h != g) line.push_back(lifted[i][z[h]]);
        }
        minor.push_back(std::move(line));
      }
      score[v] = own * Permanent(minor);
    }
    return score;
  };

  return RunTrials(options, [&](TrialRng& rng) {
    std::vector<size_t> z(n);
    for (size_t i = 0; i < n; ++i) {
      const size_t x = input_index[i][input_samplers[i].Sample(rng)];
      z[i] = row_samplers[x].Sample(rng);
    }
    // Fisher-Yates, following where the target's output lands.
    size_t target_pos = target;
    for (size_t i = n - 1; i > 0; --i) {
      const auto j = static_cast<size_t>(rng.Below(i + 1));
      std::swap(z[i], z[j]);
      if (target_pos == i) {
        target_pos = j;
      } else if (target_pos == j) {
        target_pos = i;
      }
    }
    const std::vector<double> score = scores_for(z);
    double best = -1.0;
    for (size_t v : z) best = std::max(best, score[v]);
    std::vector<size_t> top;
    for (size_t g = 0; g < n; ++g) {
      const double s = score[z[g]];
      if (s == best || (std::isfinite(s) && RelativelyClose(s, best))) {
        top.push_back(g);
      }
    }
    return top[rng.Below(top.size())] == target_pos;
  });
}

SimulationReport McReducedGame(const FloatMechanism& mech, uint64_t n,
                               const MixtureDecomposition<double>& decomp,
                               const FloatDistribution& target,
                               const SimulationOptions& options) {
  RequireUsers(n);
  for (const std::string& label : target.labels()) {
    if (!mech.Row(0).IndexOf(label)) {
      throw Error(ErrorCode::kSpaceMismatch,
                  "target label '" + label + "' is not a mechanism output");
    }
  }
  const RatioRanking ranking(target, decomp.q_com, kDefaultTieTolerance);
  const IndexSampler p_sampler(ranking.p);
  const IndexSampler q_sampler(ranking.q);
  const double gamma = decomp.gamma;
  return RunTrials(options, [&](TrialRng& rng) {
    uint64_t users = 1;
    for (uint64_t i = 1; i < n; ++i) {
      if (rng.NextDouble() < gamma) ++users;
    }
    return PlayGuessGame(ranking, p_sampler, q_sampler, users, 1, rng);
  });
}

}  // namespace reid
