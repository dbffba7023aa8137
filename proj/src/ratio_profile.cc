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

#include "reid/ratio_profile.h"

#include <algorithm>
#include <cmath>

#include "reid/error.h"

namespace reid {
namespace {

template <typename T>
struct LabelRatio {
  T ratio;
  T p;
  T q;
  size_t universe_index;
};

template <typename T>
bool Property1Holds(const RatioAtom<T>& atom) {
  if constexpr (std::is_same_v<T, Rational>) {
    return atom.f_mass == atom.t * atom.g_mass;
  } else {
    return std::fabs(atom.f_mass - atom.t * atom.g_mass) <=
           1e-12 * std::max(1.0, atom.f_mass);
  }
}

}  // namespace

template <typename T>
RatioProfile<T> RatioProfile<T>::Build(const Distribution<T>& p,
                                       const Distribution<T>& q,
                                       double tol_tie) {
  RatioProfile profile;
  profile.universe_ = LabelUnion(p, q);
  profile.label_class_.assign(profile.universe_.size(), kNoClass);
  profile.f_inf_ = 0;
  profile.max_ratio_ = 0;

  std::vector<LabelRatio<T>> finite;
  finite.reserve(profile.universe_.size());
  for (size_t i = 0; i < profile.universe_.size(); ++i) {
    T pv = p.ProbOf(profile.universe_[i]);
    T qv = q.ProbOf(profile.universe_[i]);
    if (qv == 0) {
      if (pv > 0) {
        profile.f_inf_ += pv;
        profile.label_class_[i] = kInfiniteClass;
      }
      continue;
    }
    T ratio = pv / qv;
    finite.push_back({std::move(ratio), std::move(pv), std::move(qv), i});
  }
  std::stable_sort(finite.begin(), finite.end(),
                   [](const LabelRatio<T>& a, const LabelRatio<T>& b) {
                     return a.ratio < b.ratio;
                   });

  // Group consecutive ratios; a group is anchored at its smallest member so
  // floating ties cannot chain across a long run of near-equal values.
  size_t start = 0;
  while (start < finite.size()) {
    size_t end = start + 1;
    while (end < finite.size() &&
           Numeric<T>::SameAtom(finite[start].ratio, finite[end].ratio,
                                tol_tie)) {
      ++end;
    }
    RatioAtom<T> atom{T(0), T(0), T(0)};
    for (size_t i = start; i < end; ++i) {
      atom.f_mass += finite[i].p;
      atom.g_mass += finite[i].q;
      profile.label_class_[finite[i].universe_index] =
          static_cast<int>(profile.atoms_.size());
    }
    if constexpr (std::is_same_v<T, Rational>) {
      atom.t = finite[start].ratio;
    } else {
      atom.t = atom.f_mass / atom.g_mass;
    }
    if (!Property1Holds(atom)) {
      throw Error(ErrorCode::kInvariantViolation,
                  "atom mass does not satisfy f = t * g");
    }
    profile.atoms_.push_back(std::move(atom));
    start = end;
  }

  T cum = 0;
  profile.g_cum_.reserve(profile.atoms_.size());
  profile.g_cum_left_.reserve(profile.atoms_.size());
  for (const RatioAtom<T>& atom : profile.atoms_) {
    profile.g_cum_left_.push_back(cum);
    cum += atom.g_mass;
    profile.g_cum_.push_back(cum);
  }
  if (!profile.atoms_.empty()) profile.max_ratio_ = profile.atoms_.back().t;
  return profile;
}

template <typename T>
T RatioProfile<T>::G(const T& t) const {
  auto it = std::upper_bound(
      atoms_.begin(), atoms_.end(), t,
      [](const T& value, const RatioAtom<T>& atom) { return value < atom.t; });
  if (it == atoms_.begin()) return T(0);
  return g_cum_[static_cast<size_t>(it - atoms_.begin()) - 1];
}

template <typename T>
T RatioProfile<T>::GLeft(const T& t) const {
  auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), t,
      [](const RatioAtom<T>& atom, const T& value) { return atom.t < value; });
  if (it == atoms_.begin()) return T(0);
  return g_cum_[static_cast<size_t>(it - atoms_.begin()) - 1];
}

template <typename T>
T RatioProfile<T>::IntegralG(const T& a, const T& b) const {
  if (a < 0 || b < a) {
    throw Error(ErrorCode::kInvalidArgument,
                "integration bounds must satisfy 0 <= a <= b");
  }
  // G equals g_cum_[i] on [t_i, t_{i+1}) and 1 past the last atom.
  T area = 0;
  for (size_t i = 0; i < atoms_.size(); ++i) {
    T lo = std::max<T>(a, atoms_[i].t);
    T hi = i + 1 < atoms_.size() ? std::min<T>(b, atoms_[i + 1].t) : T(b);
    if (lo < hi) area += g_cum_[i] * (hi - lo);
  }
  return area;
}

template class RatioProfile<Rational>;
template class RatioProfile<double>;

}  // namespace reid
