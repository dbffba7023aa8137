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

#include "reid/mechanism.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>
#include <utility>

#include "reid/error.h"

namespace reid {

template <typename T>
Mechanism<T>::Mechanism(std::vector<std::string> inputs,
                        std::vector<std::string> outputs, Kernel kernel,
                        std::vector<Distribution<T>> rows)
    : inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      kernel_(std::move(kernel)),
      rows_(std::move(rows)) {}

template <typename T>
Mechanism<T> Mechanism<T>::Create(std::vector<std::string> inputs,
                                  std::vector<std::string> outputs,
                                  Kernel kernel) {
  if (inputs.empty() || outputs.empty()) {
    throw Error(ErrorCode::kZeroSize, "mechanism needs inputs and outputs");
  }
  if (kernel.size() != inputs.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "kernel has " + std::to_string(kernel.size()) + " rows for " +
                    std::to_string(inputs.size()) + " inputs");
  }
  std::unordered_set<std::string> seen(inputs.begin(), inputs.end());
  if (seen.size() != inputs.size()) {
    throw Error(ErrorCode::kDuplicateLabel, "mechanism inputs repeat a label");
  }
  std::vector<Distribution<T>> rows;
  rows.reserve(kernel.size());
  for (size_t x = 0; x < kernel.size(); ++x) {
    if (kernel[x].size() != outputs.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "kernel row '" + inputs[x] + "' has " +
                      std::to_string(kernel[x].size()) + " entries for " +
                      std::to_string(outputs.size()) + " outputs");
    }
    rows.push_back(Distribution<T>::Create(outputs, kernel[x]));
  }
  return Mechanism(std::move(inputs), std::move(outputs), std::move(kernel),
                   std::move(rows));
}

template <typename T>
std::optional<size_t> Mechanism<T>::InputIndex(const std::string& label) const {
  auto it = std::find(inputs_.begin(), inputs_.end(), label);
  if (it == inputs_.end()) return std::nullopt;
  return static_cast<size_t>(it - inputs_.begin());
}

template <typename T>
size_t Mechanism<T>::RequireInput(const std::string& label) const {
  if (auto index = InputIndex(label)) return *index;
  throw Error(ErrorCode::kSpaceMismatch,
              "'" + label + "' is not an input of the mechanism");
}

template <typename T>
std::vector<T> Mechanism<T>::ColumnMin() const {
  std::vector<T> out = kernel_[0];
  for (const auto& row : kernel_) {
    for (size_t y = 0; y < row.size(); ++y) {
      if (row[y] < out[y]) out[y] = row[y];
    }
  }
  return out;
}

template <typename T>
std::vector<T> Mechanism<T>::ColumnMax() const {
  std::vector<T> out = kernel_[0];
  for (const auto& row : kernel_) {
    for (size_t y = 0; y < row.size(); ++y) {
      if (row[y] > out[y]) out[y] = row[y];
    }
  }
  return out;
}

template <typename T>
Mechanism<double> Mechanism<T>::ToFloat() const {
  Mechanism<double>::Kernel kernel(kernel_.size());
  for (size_t x = 0; x < kernel_.size(); ++x) {
    kernel[x].reserve(kernel_[x].size());
    for (const T& v : kernel_[x]) kernel[x].push_back(ConvertScalar<double>(v));
  }
  return Mechanism<double>::Create(inputs_, outputs_, std::move(kernel));
}

template <typename T>
Mechanism<T> Krr(size_t k, const T& exp_eps) {
  if (k < 2) {
    throw Error(ErrorCode::kBadArity,
                "randomized response needs k >= 2, got " + std::to_string(k));
  }
  if (!(exp_eps > 1)) {
    throw Error(ErrorCode::kNonpositiveEpsilon,
                "e^eps must exceed 1, got " + Numeric<T>::ToString(exp_eps));
  }
  const T denom = exp_eps + Numeric<T>::FromInt(static_cast<int64_t>(k) - 1);
  const T keep = exp_eps / denom;
  const T flip = T(1) / denom;
  std::vector<std::string> labels;
  for (size_t i = 1; i <= k; ++i) labels.push_back(std::to_string(i));
  typename Mechanism<T>::Kernel kernel(k, std::vector<T>(k, flip));
  for (size_t i = 0; i < k; ++i) kernel[i][i] = keep;
  return Mechanism<T>::Create(labels, labels, std::move(kernel));
}

namespace {

// Mass of Lap(0, 1/eps) on [lo, hi], evaluated on one side of zero at a time
// so that far-tail bins do not cancel catastrophically.
double LaplaceMass(double lo, double hi, double eps) {
  auto upper_tail = [eps](double z) {  // P[X >= z] for z >= 0
    return 0.5 * std::exp(-eps * z);
  };
  if (lo >= 0) return upper_tail(lo) - upper_tail(hi);
  if (hi <= 0) return upper_tail(-hi) - upper_tail(-lo);
  return 1.0 - upper_tail(-lo) - upper_tail(hi);
}

}  // namespace

FloatMechanism DiscretizedLaplace(double eps, size_t bins) {
  if (!(eps > 0)) {
    throw Error(ErrorCode::kNonpositiveEpsilon,
                "eps must be positive, got " + DoubleToString(eps));
  }
  if (bins < 2) {
    throw Error(ErrorCode::kTooFewBins,
                "need at least 2 bins, got " + std::to_string(bins));
  }
  const double width = 1.0 / static_cast<double>(bins);
  const double cutoff = 10.0 / eps;
  const auto out_bins =
      static_cast<size_t>(std::ceil((1.0 + 2.0 * cutoff) / width - 1e-9));
  const double out_lo = -cutoff;
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<std::string> inputs, outputs;
  std::vector<double> centers(bins);
  for (size_t i = 0; i < bins; ++i) {
    centers[i] = (static_cast<double>(i) + 0.5) * width;
    inputs.push_back(DoubleToString(centers[i]));
  }
  for (size_t j = 0; j < out_bins; ++j) {
    outputs.push_back(
        DoubleToString(out_lo + (static_cast<double>(j) + 0.5) * width));
  }
  FloatMechanism::Kernel kernel(bins, std::vector<double>(out_bins));
  for (size_t i = 0; i < bins; ++i) {
    double sum = 0;
    for (size_t j = 0; j < out_bins; ++j) {
      const double lo =
          j == 0 ? -inf : out_lo + static_cast<double>(j) * width - centers[i];
      const double hi = j + 1 == out_bins
                            ? inf
                            : out_lo + static_cast<double>(j + 1) * width -
                                  centers[i];
      kernel[i][j] = LaplaceMass(lo, hi, eps);
      sum += kernel[i][j];
    }
    // Residual rounding lands on the modal bin.
    const auto mode = static_cast<size_t>(
        std::max_element(kernel[i].begin(), kernel[i].end()) -
        kernel[i].begin());
    kernel[i][mode] += 1.0 - sum;
  }
  return FloatMechanism::Create(std::move(inputs), std::move(outputs),
                                std::move(kernel));
}

template <typename T>
Distribution<T> Lift(const Mechanism<T>& mech, const Distribution<T>& prior) {
  if (prior.size() != mech.num_inputs()) {
    throw Error(ErrorCode::kSpaceMismatch,
                "prior has " + std::to_string(prior.size()) +
                    " labels but the mechanism has " +
                    std::to_string(mech.num_inputs()) + " inputs");
  }
  std::vector<T> out(mech.num_outputs(), T(0));
  for (size_t i = 0; i < prior.size(); ++i) {
    const size_t x = mech.RequireInput(prior.label(i));
    if (prior.prob(i) == 0) continue;
    for (size_t y = 0; y < out.size(); ++y) out[y] += prior.prob(i) * mech.at(x, y);
  }
  return Distribution<T>::Create(mech.outputs(), std::move(out));
}

template <typename T>
std::optional<T> DpRatio(const Mechanism<T>& mech) {
  const std::vector<T> lo = mech.ColumnMin();
  const std::vector<T> hi = mech.ColumnMax();
  T ratio = 1;
  for (size_t y = 0; y < lo.size(); ++y) {
    if (hi[y] == 0) continue;
    if (lo[y] == 0) return std::nullopt;
    const T r = hi[y] / lo[y];
    if (r > ratio) ratio = r;
  }
  return ratio;
}

template <typename T>
double DpEpsilon(const Mechanism<T>& mech) {
  const auto ratio = DpRatio(mech);
  if (!ratio) return std::numeric_limits<double>::infinity();
  return std::max(0.0, std::log(ConvertScalar<double>(*ratio)));
}

template class Mechanism<Rational>;
template class Mechanism<double>;
template Mechanism<Rational> Krr(size_t, const Rational&);
template Mechanism<double> Krr(size_t, const double&);
template Distribution<Rational> Lift(const Mechanism<Rational>&,
                                     const Distribution<Rational>&);
template Distribution<double> Lift(const Mechanism<double>&,
                                   const Distribution<double>&);
template std::optional<Rational> DpRatio(const Mechanism<Rational>&);
template std::optional<double> DpRatio(const Mechanism<double>&);
template double DpEpsilon(const Mechanism<Rational>&);
template double DpEpsilon(const Mechanism<double>&);

}  // namespace reid
