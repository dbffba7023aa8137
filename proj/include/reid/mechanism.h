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

#ifndef REID_MECHANISM_H_
#define REID_MECHANISM_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "reid/distribution.h"
#include "reid/numeric.h"

namespace reid {

// A finite local randomizer: row i of the kernel is the output distribution
// of input i.
template <typename T>
class Mechanism {
 public:
  using Kernel = std::vector<std::vector<T>>;

  // Every row must be a valid distribution over `outputs`.
  static Mechanism Create(std::vector<std::string> inputs,
                          std::vector<std::string> outputs, Kernel kernel);

  size_t num_inputs() const { return inputs_.size(); }
  size_t num_outputs() const { return outputs_.size(); }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  const Kernel& kernel() const { return kernel_; }
  const T& at(size_t x, size_t y) const { return kernel_[x][y]; }

  std::optional<size_t> InputIndex(const std::string& label) const;
  // Throws kSpaceMismatch for unknown labels.
  size_t RequireInput(const std::string& label) const;

  const Distribution<T>& Row(size_t x) const { return rows_[x]; }
  const Distribution<T>& RowOf(const std::string& input) const {
    return rows_[RequireInput(input)];
  }

  // Column-wise minimum over inputs.
  std::vector<T> ColumnMin() const;
  std::vector<T> ColumnMax() const;

  Mechanism<double> ToFloat() const;

 private:
  Mechanism(std::vector<std::string> inputs, std::vector<std::string> outputs,
            Kernel kernel, std::vector<Distribution<T>> rows);

  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  Kernel kernel_;
  std::vector<Distribution<T>> rows_;
};

using ExactMechanism = Mechanism<Rational>;
using FloatMechanism = Mechanism<double>;

// k-ary randomized response parameterized by e^eps (> 1): the true value is
// reported with probability e^eps / (e^eps + k - 1). Labels are "1".."k".
// Throws kBadArity, kNonpositiveEpsilon.
template <typename T>
Mechanism<T> Krr(size_t k, const T& exp_eps);

// x + Lap(1/eps) restricted to [0, 1] and discretized: inputs are the `bins`
// bin centers of [0, 1]; outputs are bins of the same width covering
// [-B, 1 + B] with B = 10/eps, the tails folded into the two end bins. Bin
// masses are exact integrals of the Laplace density.
// Throws kNonpositiveEpsilon, kTooFewBins.
FloatMechanism DiscretizedLaplace(double eps, size_t bins);

// Output distribution of R when the input is drawn from `prior`; the prior
// must be over exactly R's input labels. Throws kSpaceMismatch.
template <typename T>
Distribution<T> Lift(const Mechanism<T>& mech, const Distribution<T>& prior);

// max over columns with a positive entry of max/min; nullopt when some column
// mixes zero and positive entries (eps = +inf). 1 for a single-row kernel.
template <typename T>
std::optional<T> DpRatio(const Mechanism<T>& mech);

// ln(DpRatio); +inf when DpRatio is nullopt.
template <typename T>
double DpEpsilon(const Mechanism<T>& mech);

}  // namespace reid

#endif  // REID_MECHANISM_H_
