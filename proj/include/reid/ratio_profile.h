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

#ifndef REID_RATIO_PROFILE_H_
#define REID_RATIO_PROFILE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "reid/distribution.h"
#include "reid/numeric.h"

namespace reid {

// One likelihood-ratio class: all labels y with P(y)/Q(y) == t.
// f_mass = P(class), g_mass = Q(class), and f_mass == t * g_mass.
template <typename T>
struct RatioAtom {
  T t;
  T f_mass;
  T g_mass;
};

// The distribution of the likelihood ratio P(y)/Q(y) under P and under Q,
// grouped into atoms sorted by increasing t. Labels with Q(y) = 0 < P(y)
// are collected in f_inf(); labels with P(y) = 0 < Q(y) form the atom t = 0.
template <typename T>
class RatioProfile {
 public:
  // Class index of a universe label whose ratio is +inf.
  static constexpr int kInfiniteClass = -1;
  // Class index of a label with P(y) = Q(y) = 0.
  static constexpr int kNoClass = -2;

  // `tol_tie` is only consulted by the floating instantiation.
  static RatioProfile Build(const Distribution<T>& p, const Distribution<T>& q,
                            double tol_tie = kDefaultTieTolerance);

  const std::vector<RatioAtom<T>>& atoms() const { return atoms_; }
  const T& f_inf() const { return f_inf_; }
  // Largest finite ratio M; zero when there are no atoms.
  const T& max_ratio() const { return max_ratio_; }

  // G(t) = Q-mass of atoms with ratio <= t (right-continuous).
  T G(const T& t) const;
  // G(t-) = Q-mass of atoms with ratio < t.
  T GLeft(const T& t) const;
  // G evaluated at atom i, and its left limit there.
  const T& GAt(size_t i) const { return g_cum_[i]; }
  const T& GLeftAt(size_t i) const { return g_cum_left_[i]; }

  // Area under the step function G over [a, b], 0 <= a <= b.
  T IntegralG(const T& a, const T& b) const;

  // Label universe (union of both supports) and, for each universe label,
  // the atom index it belongs to (or kInfiniteClass / kNoClass). Atom indices
  // increase with the ratio, so they rank labels for the optimal adversary.
  const std::vector<std::string>& universe() const { return universe_; }
  const std::vector<int>& label_class() const { return label_class_; }

 private:
  std::vector<RatioAtom<T>> atoms_;
  std::vector<T> g_cum_;
  std::vector<T> g_cum_left_;
  T f_inf_;
  T max_ratio_;
  std::vector<std::string> universe_;
  std::vector<int> label_class_;
};

}  // namespace reid

#endif  // REID_RATIO_PROFILE_H_
