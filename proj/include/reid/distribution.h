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

#ifndef REID_DISTRIBUTION_H_
#define REID_DISTRIBUTION_H_

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "reid/numeric.h"

namespace reid {

// A probability vector over a finite set of distinct string labels.
// Immutable once created; Create() validates and never renormalizes.
template <typename T>
class Distribution {
 public:
  // Throws kNegativeProbability, kNotNormalized, kDuplicateLabel, kZeroSize
  // or kInvalidArgument (length mismatch).
  static Distribution Create(std::vector<std::string> labels,
                             std::vector<T> probs);

  // Labels default to "1", "2", ..., "m".
  static Distribution FromProbs(std::vector<T> probs);

  static constexpr NumericMode mode() { return Numeric<T>::kMode; }

  size_t size() const { return probs_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<T>& probs() const { return probs_; }
  const std::string& label(size_t i) const { return labels_[i]; }
  const T& prob(size_t i) const { return probs_[i]; }

  std::optional<size_t> IndexOf(const std::string& label) const;
  // Probability of `label`; zero for labels outside the support list.
  T ProbOf(const std::string& label) const;

  Distribution<double> ToFloat() const;

 private:
  Distribution(std::vector<std::string> labels, std::vector<T> probs);

  std::vector<std::string> labels_;
  std::vector<T> probs_;
  std::unordered_map<std::string, size_t> index_;
};

using ExactDistribution = Distribution<Rational>;
using FloatDistribution = Distribution<double>;

template <typename T>
Distribution<T> Uniform(size_t m);

// probs[r-1] = r^-s / sum_{i<=m} i^-s, normalized by direct summation. The
// exact instantiation requires an integer exponent.
template <typename T>
Distribution<T> Zipf(size_t m, double s);

template <typename T>
T TotalVariation(const Distribution<T>& p, const Distribution<T>& q);

// Ordered union of the two label sets: p's labels first, then q's new ones.
template <typename T>
std::vector<std::string> LabelUnion(const Distribution<T>& p,
                                    const Distribution<T>& q);

}  // namespace reid

#endif  // REID_DISTRIBUTION_H_
