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

// JSON file formats.
//
// Distribution:
//   {"probs": ["0.25", "3/4"], "labels": ["a", "b"], "mode": "exact"}
//   {"type": "uniform", "m": 4}
//   {"type": "zipf", "m": 10000, "s": 0.7}
// Mechanism:
//   {"inputs": [...], "outputs": [...], "kernel": [["3/4", "1/4"], ...]}
//   {"type": "krr", "k": 2, "e_eps": "3"}
//   {"type": "laplace", "eps": 1.0, "bins": 201}
//
// Probabilities are decimal or "p/q" strings; JSON numbers are accepted and
// read through their shortest decimal spelling. Exact output always uses
// "p/q" strings, floating output shortest round-trip decimals, so re-reading
// an emitted file reproduces it bit for bit.

#ifndef REID_IO_H_
#define REID_IO_H_

#include <string>

#include "json.hpp"
#include "reid/distribution.h"
#include "reid/mechanism.h"
#include "reid/numeric.h"

namespace reid {

// Reads a file, or parses the argument itself when it starts with '{'.
// Throws kFileNotFound, kParseError.
nlohmann::json LoadJsonSource(const std::string& path_or_inline);

// The numeric mode a document asks for: kFloat for zipf with a non-integer
// exponent, laplace, or an explicit "mode": "float"; kExact otherwise.
NumericMode PreferredMode(const nlohmann::json& doc);

// Throws kParseError plus any validation error of the constructed object.
template <typename T>
Distribution<T> DistributionFromJson(const nlohmann::json& doc);
template <typename T>
nlohmann::json DistributionToJson(const Distribution<T>& dist);

template <typename T>
Mechanism<T> MechanismFromJson(const nlohmann::json& doc);
template <typename T>
nlohmann::json MechanismToJson(const Mechanism<T>& mech);

}  // namespace reid

#endif  // REID_IO_H_
