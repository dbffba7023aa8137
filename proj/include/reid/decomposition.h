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

// Mixture decompositions R(x) = gamma * Q_com + (1 - gamma) * LO(x) and the
// bounds they yield on re-identification in the shuffle model.

#ifndef REID_DECOMPOSITION_H_
#define REID_DECOMPOSITION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reid/distribution.h"
#include "reid/mechanism.h"

namespace reid {

enum class DecompositionKind { kClone, kBlanket, kCustom };

std::string_view DecompositionKindName(DecompositionKind kind);

template <typename T>
struct MixtureDecomposition {
  DecompositionKind kind = DecompositionKind::kCustom;
  T gamma;
  Distribution<T> q_com;
  // LO(x) per input; empty when gamma == 1 (the leftover carries no weight).
  std::vector<std::optional<Distribution<T>>> leftover;
};

// Validates gamma in (0, 1] and gamma * q_com <= R(x) pointwise, then solves
// LO(x) = (R(x) - gamma * q_com) / (1 - gamma). Throws kInvalidArgument,
// kSpaceMismatch.
template <typename T>
MixtureDecomposition<T> MakeDecomposition(const Mechanism<T>& mech,
                                          const T& gamma,
                                          const Distribution<T>& q_com,
                                          DecompositionKind kind =
                                              DecompositionKind::kCustom);

// gamma = e^-eps, Q_com = R(x1). Throws kInfiniteEpsilon.
template <typename T>
MixtureDecomposition<T> CloneDecompose(const Mechanism<T>& mech,
                                       const std::string& x1);

// Q_com(y) = min_x R(x)(y) / alpha with alpha the total column-minimum mass.
// Throws kZeroBlanket.
template <typename T>
MixtureDecomposition<T> BlanketDecompose(const Mechanism<T>& mech);

// Success probability in the reduced game:
//   sum_m C(n-1, m) gamma^m (1-gamma)^(n-1-m) beta_{m+1}(P1, Q_com).
// `target` is the target's output distribution (a row or a lifted row).
// Throws kZeroUsers, kSpaceMismatch.
template <typename T>
T Psi(const Mechanism<T>& mech, uint64_t n,
      const MixtureDecomposition<T>& decomp, const Distribution<T>& target);

// Psi for n = 1..n_max, sharing one ratio profile.
template <typename T>
std::vector<T> PsiSequence(const Mechanism<T>& mech, uint64_t n_max,
                           const MixtureDecomposition<T>& decomp,
                           const Distribution<T>& target);

// min(e^eps / n, 1). Throws kZeroUsers, kInvalidArgument for eps < 0.
double CloneBound(double eps, uint64_t n);
// min(exp_eps / n, 1) with e^eps given directly.
template <typename T>
T CloneBoundFromRatio(const T& exp_eps, uint64_t n);

// sup_y target(y) / min_x R(x)(y); nullopt (+inf) when some y has
// target(y) > 0 but a zero column minimum.
template <typename T>
std::optional<T> BlanketM(const Mechanism<T>& mech,
                          const Distribution<T>& target);

template <typename T>
struct DecompositionPsi {
  DecompositionKind kind;
  T gamma;
  T psi;
};

template <typename T>
struct DecompositionComparison {
  uint64_t n = 0;
  DecompositionPsi<T> blanket;
  std::vector<DecompositionPsi<T>> candidates;
};

// Computes psi for the blanket decomposition and every candidate, and throws
// kInvariantViolation if any candidate beats the blanket.
template <typename T>
DecompositionComparison<T> CompareDecompositions(
    const Mechanism<T>& mech, uint64_t n, const Distribution<T>& target,
    const std::vector<MixtureDecomposition<T>>& candidates);

}  // namespace reid

#endif  // REID_DECOMPOSITION_H_
