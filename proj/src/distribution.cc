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

#include "reid/distribution.h"

#include <cmath>
#include <string>
#include <utility>

#include "reid/error.h"

namespace reid {

template <typename T>
Distribution<T>::Distribution(std::vector<std::string> labels,
                              std::vector<T> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
  index_.reserve(labels_.size());
  for (size_t i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], i);
}

template <typename T>
Distribution<T> Distribution<T>::Create(std::vector<std::string> labels,
                                        std::vector<T> probs) {
  if (probs.empty()) {
    throw Error(ErrorCode::kZeroSize, "distribution needs at least one entry");
  }
  if (labels.size() != probs.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "got " + std::to_string(labels.size()) + " labels for " +
                    std::to_string(probs.size()) + " probabilities");
  }
  T sum = 0;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < 0) {
      throw Error(ErrorCode::kNegativeProbability,
                  "probability of '" + labels[i] + "' is " +
                      Numeric<T>::ToString(probs[i]));
    }
    sum += probs[i];
  }
  if (!Numeric<T>::IsNormalized(sum)) {
    T deviation = sum - 1;
    throw Error(ErrorCode::kNotNormalized,
                "probabilities sum to " + Numeric<T>::ToString(sum) +
                    " (deviation " + Numeric<T>::ToString(deviation) + ")");
  }
  Distribution dist(std::move(labels), std::move(probs));
  if (dist.index_.size() != dist.labels_.size()) {
    for (size_t i = 0; i < dist.labels_.size(); ++i) {
      if (dist.index_.at(dist.labels_[i]) != i) {
        throw Error(ErrorCode::kDuplicateLabel,
                    "label '" + dist.labels_[i] + "' appears twice");
      }
    }
  }
  return dist;
}

template <typename T>
Distribution<T> Distribution<T>::FromProbs(std::vector<T> probs) {
  std::vector<std::string> labels;
  labels.reserve(probs.size());
  for (size_t i = 0; i < probs.size(); ++i) labels.push_back(std::to_string(i + 1));
  return Create(std::move(labels), std::move(probs));
}

template <typename T>
std::optional<size_t> Distribution<T>::IndexOf(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

template <typename T>
T Distribution<T>::ProbOf(const std::string& label) const {
  auto it = index_.find(label);
  return it == index_.end() ? T(0) : probs_[it->second];
}

template <typename T>
Distribution<double> Distribution<T>::ToFloat() const {
  std::vector<double> probs;
  probs.reserve(probs_.size());
  for (const T& p : probs_) probs.push_back(ConvertScalar<double>(p));
  return Distribution<double>::Create(labels_, std::move(probs));
}

template <typename T>
Distribution<T> Uniform(size_t m) {
  if (m == 0) throw Error(ErrorCode::kZeroSize, "uniform over zero labels");
  std::vector<T> probs(m, T(1) / Numeric<T>::FromInt(static_cast<int64_t>(m)));
  return Distribution<T>::FromProbs(std::move(probs));
}

template <typename T>
Distribution<T> Zipf(size_t m, double s) {
  if (m == 0) throw Error(ErrorCode::kZeroSize, "zipf over zero labels");
  if (!(s > 0)) {
    throw Error(ErrorCode::kNonpositiveExponent,
                "zipf exponent must be positive, got " + DoubleToString(s));
  }
  std::vector<T> weights(m);
  if constexpr (std::is_same_v<T, Rational>) {
    if (s != std::floor(s)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "exact zipf needs an integer exponent; use float mode");
    }
    const auto exponent = static_cast<uint64_t>(s);
    for (size_t r = 1; r <= m; ++r) {
      weights[r - 1] = Numeric<Rational>::Pow(
          Rational(1, static_cast<unsigned long>(r)), exponent);
    }
  } else {
    for (size_t r = 1; r <= m; ++r) {
      weights[r - 1] = std::pow(static_cast<double>(r), -s);
    }
  }
  // Sum smallest-first to keep the floating normalizer tight.
  T total = 0;
  for (size_t r = m; r-- > 0;) total += weights[r];
  for (T& w : weights) w /= total;
  return Distribution<T>::FromProbs(std::move(weights));
}

template <typename T>
std::vector<std::string> LabelUnion(const Distribution<T>& p,
                                    const Distribution<T>& q) {
  std::vector<std::string> out = p.labels();
  for (const std::string& label : q.labels()) {
    if (!p.IndexOf(label)) out.push_back(label);
  }
  return out;
}

template <typename T>
T TotalVariation(const Distribution<T>& p, const Distribution<T>& q) {
  T total = 0;
  for (const std::string& label : LabelUnion(p, q)) {
    T diff = p.ProbOf(label) - q.ProbOf(label);
    total += diff < 0 ? T(-diff) : diff;
  }
  return total / 2;
}

template class Distribution<Rational>;
template class Distribution<double>;

template Distribution<Rational> Uniform<Rational>(size_t);
template Distribution<double> Uniform<double>(size_t);
template Distribution<Rational> Zipf<Rational>(size_t, double);
template Distribution<double> Zipf<double>(size_t, double);
template std::vector<std::string> LabelUnion(const Distribution<Rational>&,
                                             const Distribution<Rational>&);
template std::vector<std::string> LabelUnion(const Distribution<double>&,
                                             const Distribution<double>&);
template Rational TotalVariation(const Distribution<Rational>&,
                                 const Distribution<Rational>&);
template double TotalVariation(const Distribution<double>&,
                               const Distribution<double>&);

}  // namespace reid
