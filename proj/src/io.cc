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

#include "reid/io.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "reid/error.h"

namespace reid {

using nlohmann::json;

namespace {

[[noreturn]] void Fail(const std::string& msg) {
  throw Error(ErrorCode::kParseError, msg);
}

const json& Field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    Fail(std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

std::string TypeOf(const json& doc) {
  if (doc.is_object() && doc.contains("type")) {
    if (!doc["type"].is_string()) Fail("'type' must be a string");
    return doc["type"].get<std::string>();
  }
  return "";
}

uint64_t ReadCount(const json& doc, const char* key) {
  const json& v = Field(doc, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0)) {
    Fail(std::string("'") + key + "' must be a nonnegative integer");
  }
  return v.get<uint64_t>();
}

double ReadDouble(const json& doc, const char* key) {
  const json& v = Field(doc, key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return ParseDouble(v.get<std::string>());
  Fail(std::string("'") + key + "' must be a number");
}

template <typename T>
T ReadScalar(const json& v) {
  if (v.is_string()) return Numeric<T>::Parse(v.get<std::string>());
  if (v.is_number_integer()) return Numeric<T>::FromInt(v.get<int64_t>());
  if (v.is_number()) return Numeric<T>::Parse(DoubleToString(v.get<double>()));
  Fail("probability must be a number or a string");
}

template <typename T>
std::vector<T> ReadScalars(const json& v, const char* what) {
  if (!v.is_array()) Fail(std::string("'") + what + "' must be an array");
  std::vector<T> out;
  out.reserve(v.size());
  for (const json& item : v) out.push_back(ReadScalar<T>(item));
  return out;
}

std::vector<std::string> ReadLabels(const json& v, const char* what) {
  if (!v.is_array()) Fail(std::string("'") + what + "' must be an array");
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const json& item : v) {
    if (item.is_string()) {
      out.push_back(item.get<std::string>());
    } else if (item.is_number_integer()) {
      out.push_back(std::to_string(item.get<int64_t>()));
    } else {
      Fail(std::string("'") + what + "' entries must be strings");
    }
  }
  return out;
}

template <typename T>
json ScalarToJson(const T& x) {
  return Numeric<T>::ToString(x);
}

}  // namespace

json LoadJsonSource(const std::string& path_or_inline) {
  std::string text;
  const auto first = path_or_inline.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && path_or_inline[first] == '{') {
    text = path_or_inline;
  } else {
    std::ifstream in(path_or_inline);
    if (!in) {
      throw Error(ErrorCode::kFileNotFound,
                  "cannot open '" + path_or_inline + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(std::string("invalid JSON: ") + e.what());
  }
}

NumericMode PreferredMode(const json& doc) {
  if (doc.is_object() && doc.contains("mode")) {
    if (!doc["mode"].is_string()) Fail("'mode' must be a string");
    return ParseNumericMode(doc["mode"].get<std::string>());
  }
  const std::string type = TypeOf(doc);
  if (type == "laplace") return NumericMode::kFloat;
  if (type == "zipf") {
    const double s = ReadDouble(doc, "s");
    if (s != std::floor(s)) return NumericMode::kFloat;
  }
  return NumericMode::kExact;
}

template <typename T>
Distribution<T> DistributionFromJson(const json& doc) {
  if (!doc.is_object()) Fail("distribution must be a JSON object");
  const std::string type = TypeOf(doc);
  if (type == "uniform") return Uniform<T>(ReadCount(doc, "m"));
  if (type == "zipf") return Zipf<T>(ReadCount(doc, "m"), ReadDouble(doc, "s"));
  if (!type.empty() && type != "explicit") {
    Fail("unknown distribution type '" + type + "'");
  }
  std::vector<T> probs = ReadScalars<T>(Field(doc, "probs"), "probs");
  if (doc.contains("labels")) {
    return Distribution<T>::Create(ReadLabels(doc["labels"], "labels"),
                                   std::move(probs));
  }
  return Distribution<T>::FromProbs(std::move(probs));
}

template <typename T>
json DistributionToJson(const Distribution<T>& dist) {
  json probs = json::array();
  for (const T& p : dist.probs()) probs.push_back(ScalarToJson(p));
  return json{{"labels", dist.labels()},
              {"probs", std::move(probs)},
              {"mode", std::string(NumericModeName(Numeric<T>::kMode))}};
}

template <typename T>
Mechanism<T> MechanismFromJson(const json& doc) {
  if (!doc.is_object()) Fail("mechanism must be a JSON object");
  const std::string type = TypeOf(doc);
  if (type == "krr") {
    const json& e = Field(doc, "e_eps");
    return Krr<T>(ReadCount(doc, "k"), ReadScalar<T>(e));
  }
  if (type == "laplace") {
    if constexpr (std::is_same_v<T, double>) {
      return DiscretizedLaplace(ReadDouble(doc, "eps"), ReadCount(doc, "bins"));
    } else {
      Fail("the discretized Laplace mechanism is only available in float mode");
    }
  }
  if (!type.empty() && type != "explicit") {
    Fail("unknown mechanism type '" + type + "'");
  }
  const json& rows = Field(doc, "kernel");
  if (!rows.is_array()) Fail("'kernel' must be an array of rows");
  typename Mechanism<T>::Kernel kernel;
  for (const json& row : rows) kernel.push_back(ReadScalars<T>(row, "kernel"));
  std::vector<std::string> inputs, outputs;
  if (doc.contains("inputs")) {
    inputs = ReadLabels(doc["inputs"], "inputs");
  } else {
    for (size_t i = 1; i <= kernel.size(); ++i) inputs.push_back(std::to_string(i));
  }
  if (doc.contains("outputs")) {
    outputs = ReadLabels(doc["outputs"], "outputs");
  } else if (!kernel.empty()) {
    for (size_t i = 1; i <= kernel[0].size(); ++i) {
      outputs.push_back(std::to_string(i));
    }
  }
  return Mechanism<T>::Create(std::move(inputs), std::move(outputs),
                              std::move(kernel));
}

template <typename T>
json MechanismToJson(const Mechanism<T>& mech) {
  json kernel = json::array();
  for (const auto& row : mech.kernel()) {
    json line = json::array();
    for (const T& v : row) line.push_back(ScalarToJson(v));
    kernel.push_back(std::move(line));
  }
  return json{{"inputs", mech.inputs()},
              {"outputs", mech.outputs()},
              {"kernel", std::move(kernel)},
              {"mode", std::string(NumericModeName(Numeric<T>::kMode))}};
}

template Distribution<Rational> DistributionFromJson(const json&);
template Distribution<double> DistributionFromJson(const json&);
template json DistributionToJson(const Distribution<Rational>&);
template json DistributionToJson(const Distribution<double>&);
template Mechanism<Rational> MechanismFromJson(const json&);
template Mechanism<double> MechanismFromJson(const json&);
template json MechanismToJson(const Mechanism<Rational>&);
template json MechanismToJson(const Mechanism<double>&);

}  // namespace reid
