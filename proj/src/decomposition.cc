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

#include "reid/decomposition.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "reid/bayes.h"
#include "reid/error.h"
#include "reid/ratio_profile.h"

namespace reid {

std::string_view DecompositionKindName(DecompositionKind kind) {
  switch (kind) {
    case DecompositionKind::kClone: return "clone";
    case DecompositionKind::kBlanket: return "blanket";
    case DecompositionKind::kCustom: return "custom";
  }
  return "unknown";
}

namespace {

// `dist` re-expressed over the mechanism's output labels, in their order.
template <typename T>
std::vector<T> AlignToOutputs(const Mechanism<T>& mech,
                              const Distribution<T>& dist, const char* what) {
  for (const std::string& label : dist.labels()) {
    if (!mech.Row(0).IndexOf(label)) {
      throw Error(ErrorCode::kSpaceMismatch,
                  std::string(what) + " label '" + label +
                      "' is not a mechanism output");
    }
  }
  std::vector<T> out;
  out.reserve(mech.num_outputs());
  for (const std::string& label : mech.outputs()) out.push_back(dist.ProbOf(label));
  return out;
}

void RequireUsers(uint64_t n) {
  if (n == 0) throw Error(ErrorCode::kZeroUsers, "n must be at least 1");
}

// Bin(trials, gamma) probability masses, 0 < gamma <= 1.
template <typename T>
std::vector<T> BinomialWeights(uint64_t trials, const T& gamma) {
  std::vector<T> w(trials + 1, T(0));
  if (gamma == 1) {
    w[trials] = 1;
    return w;
  }
  if constexpr (std::is_same_v<T, Rational>) {
    // Running products keep every weight exact without factorials.
    const Rational odds = gamma / (Rational(1) - gamma);
    w[0] = Numeric<Rational>::Pow(Rational(1) - gamma, trials);
    for (uint64_t m = 0; m < trials; ++m) {
      w[m + 1] = w[m] * odds *
                 Fraction(trials - m, m + 1);
    }
  } else {
    // Log space: (1 - gamma)^trials underflows long before trials = 10^4.
    const double log_g = std::log(gamma);
    const double log_1g = std::log1p(-gamma);
    const double log_n_fact = std::lgamma(static_cast<double>(trials) + 1.0);
    for (uint64_t m = 0; m <= trials; ++m) {
      const double log_w = log_n_fact -
                           std::lgamma(static_cast<double>(m) + 1.0) -
                           std::lgamma(static_cast<double>(trials - m) + 1.0) +
                           static_cast<double>(m) * log_g +
                           static_cast<double>(trials - m) * log_1g;
      w[m] = std::exp(log_w);
    }
  }
  return w;
}

template <typename T>
T PsiFromBetas(const std::vector<T>& betas, uint64_t n, const T& gamma) {
  const std::vector<T> weights = BinomialWeights<T>(n - 1, gamma);
  T psi = 0;
  for (uint64_t m = 0; m < n; ++m) {
    if (weights[m] != 0) psi += weights[m] * betas[m];
  }
  return psi;
}

}  // namespace

template <typename T>
MixtureDecomposition<T> MakeDecomposition(const Mechanism<T>& mech,
                                          const T& gamma,
                                          const Distribution<T>& q_com,
                                          DecompositionKind kind) {
  if (!(gamma > 0) || gamma > 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "mixing weight must lie in (0, 1], got " +
                    Numeric<T>::ToString(gamma));
  }
  std::vector<T> common = AlignToOutputs(mech, q_com, "common component");
  for (size_t x = 0; x < mech.num_inputs(); ++x) {
    for (size_t y = 0; y < mech.num_outputs(); ++y) {
      if (!Numeric<T>::LessOrEqual(gamma * common[y], mech.at(x, y))) {
        throw Error(ErrorCode::kInvalidArgument,
                    "gamma * Q_com exceeds R(" + mech.inputs()[x] + ") at '" +
                        mech.outputs()[y] + "'");
      }
    }
  }
  MixtureDecomposition<T> out{
      kind, gamma, Distribution<T>::Create(mech.outputs(), common), {}};
  out.leftover.resize(mech.num_inputs());
  if (gamma == 1) return out;

  const T rest = T(1) - gamma;
  for (size_t x = 0; x < mech.num_inputs(); ++x) {
    std::vector<T> lo(mech.num_outputs());
    T sum = 0;
    for (size_t y = 0; y < mech.num_outputs(); ++y) {
      lo[y] = (mech.at(x, y) - gamma * common[y]) / rest;
      if constexpr (std::is_same_v<T, double>) lo[y] = std::max(0.0, lo[y]);
      sum += lo[y];
    }
    if constexpr (std::is_same_v<T, double>) {
      for (double& v : lo) v /= sum;
    }
    out.leftover[x] = Distribution<T>::Create(mech.outputs(), std::move(lo));
  }
  return out;
}

template <typename T>
MixtureDecomposition<T> CloneDecompose(const Mechanism<T>& mech,
                                       const std::string& x1) {
  const auto ratio = DpRatio(mech);
  if (!ratio) {
    throw Error(ErrorCode::kInfiniteEpsilon,
                "mechanism is not eps-DP for any finite eps; the clone "
                "decomposition degenerates (a blanket may still exist)");
  }
  const T gamma = T(1) / *ratio;
  return MakeDecomposition(mech, gamma, mech.RowOf(x1),
                           DecompositionKind::kClone);
}

template <typename T>
MixtureDecomposition<T> BlanketDecompose(const Mechanism<T>& mech) {
  std::vector<T> mins = mech.ColumnMin();
  T alpha = 0;
  for (const T& v : mins) alpha += v;
  if (alpha == 0) {
    throw Error(ErrorCode::kZeroBlanket,
                "column minima are all zero: no common component");
  }
  for (T& v : mins) v /= alpha;
  if constexpr (std::is_same_v<T, double>) alpha = std::min(alpha, 1.0);
  return MakeDecomposition(mech, alpha,
                           Distribution<T>::Create(mech.outputs(), mins),
                           DecompositionKind::kBlanket);
}

template <typename T>
std::vector<T> PsiSequence(const Mechanism<T>& mech, uint64_t n_max,
                           const MixtureDecomposition<T>& decomp,
                           const Distribution<T>& target) {
  RequireUsers(n_max);
  const std::vector<T> aligned = AlignToOutputs(mech, target, "target");
  const auto profile = RatioProfile<T>::Build(
      Distribution<T>::Create(mech.outputs(), aligned), decomp.q_com);
  const std::vector<T> betas = BetaNSequence(profile, n_max);
  std::vector<T> out;
  out.reserve(n_max);
  for (uint64_t n = 1; n <= n_max; ++n) {
    out.push_back(PsiFromBetas(betas, n, decomp.gamma));
  }
  return out;
}

template <typename T>
T Psi(const Mechanism<T>& mech, uint64_t n,
      const MixtureDecomposition<T>& decomp, const Distribution<T>& target) {
  RequireUsers(n);
  const std::vector<T> aligned = AlignToOutputs(mech, target, "target");
  const auto profile = RatioProfile<T>::Build(
      Distribution<T>::Create(mech.outputs(), aligned), decomp.q_com);
  return PsiFromBetas(BetaNSequence(profile, n), n, decomp.gamma);
}

double CloneBound(double eps, uint64_t n) {
  RequireUsers(n);
  if (!(eps >= 0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "eps must be nonnegative, got " + DoubleToString(eps));
  }
  return std::min(1.0, std::exp(eps) / static_cast<double>(n));
}

template <typename T>
T CloneBoundFromRatio(const T& exp_eps, uint64_t n) {
  RequireUsers(n);
  const T bound = exp_eps / Numeric<T>::FromInt(static_cast<int64_t>(n));
  return bound < 1 ? bound : T(1);
}

template <typename T>
std::optional<T> BlanketM(const Mechanism<T>& mech,
                          const Distribution<T>& target) {
  const std::vector<T> aligned = AlignToOutputs(mech, target, "target");
  const std::vector<T> mins = mech.ColumnMin();
  T best = 0;
  for (size_t y = 0; y < aligned.size(); ++y) {
    if (aligned[y] == 0) continue;
    if (mins[y] == 0) return std::nullopt;
    const T r = aligned[y] / mins[y];
    if (r > best) best = r;
  }
  return best;
}

template <typename T>
DecompositionComparison<T> CompareDecompositions(
    const Mechanism<T>& mech, uint64_t n, const Distribution<T>& target,
    const std::vector<MixtureDecomposition<T>>& candidates) {
  DecompositionComparison<T> report;
  report.n = n;
  const auto blanket = BlanketDecompose(mech);
  report.blanket = {DecompositionKind::kBlanket, blanket.gamma,
                    Psi(mech, n, blanket, target)};
  for (const auto& candidate : candidates) {
    DecompositionPsi<T> row{candidate.kind, candidate.gamma,
                            Psi(mech, n, candidate, target)};
    if (!Numeric<T>::LessOrEqual(report.blanket.psi, row.psi)) {
      throw Error(ErrorCode::kInvariantViolation,
                  "blanket psi " + Numeric<T>::ToString(report.blanket.psi) +
                      " exceeds " +
                      std::string(DecompositionKindName(candidate.kind)) +
                      " psi " + Numeric<T>::ToString(row.psi) + " at n=" +
                      std::to_string(n) + " (gamma " +
                      Numeric<T>::ToString(candidate.gamma) + ")");
    }
    report.candidates.push_back(std::move(row));
  }
  return report;
}

#define REID_INSTANTIATE_DECOMPOSITION(T)                                     \
  template MixtureDecomposition<T> MakeDecomposition(                         \
      const Mechanism<T>&, const T&, const Distribution<T>&,                  \
      DecompositionKind);                                                     \
  template MixtureDecomposition<T> CloneDecompose(const Mechanism<T>&,        \
                                                  const std::string&);        \
  template MixtureDecomposition<T> BlanketDecompose(const Mechanism<T>&);     \
  template T Psi(const Mechanism<T>&, uint64_t,                               \
                 const MixtureDecomposition<T>&, const Distribution<T>&);     \
  template std::vector<T> PsiSequence(const Mechanism<T>&, uint64_t,          \
                                      const MixtureDecomposition<T>&,         \
                                      const Distribution<T>&);                \
  template T CloneBoundFromRatio(const T&, uint64_t);                         \
  template std::optional<T> BlanketM(const Mechanism<T>&,                     \
                                     const Distribution<T>&);                 \
  template DecompositionComparison<T> CompareDecompositions(                  \
      const Mechanism<T>&, uint64_t, const Distribution<T>&,                  \
      const std::vector<MixtureDecomposition<T>>&);

REID_INSTANTIATE_DECOMPOSITION(Rational)
REID_INSTANTIATE_DECOMPOSITION(double)

#undef REID_INSTANTIATE_DECOMPOSITION

}  // namespace reid
