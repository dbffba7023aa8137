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

// Scalar plumbing shared by the exact (GMP rational) and floating code paths.
// Every numeric algorithm in the library is a template over one of the two
// scalar types below and is explicitly instantiated for both.

#ifndef REID_NUMERIC_H_
#define REID_NUMERIC_H_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

namespace reid {

using Rational = mpq_class;

enum class NumericMode { kExact, kFloat };

// Two floating ratios t1, t2 are the same likelihood-ratio atom iff
// |t1 - t2| <= tol * max(1, |t1|).
inline constexpr double kDefaultTieTolerance = 1e-12;

// Allowed |sum - 1| for floating distributions.
inline constexpr double kFloatNormTolerance = 1e-12;

// num/den in lowest terms; mpq_class's two-argument constructor does not
// canonicalize, and GMP arithmetic assumes canonical operands.
inline Rational Fraction(uint64_t num, uint64_t den) {
  Rational out(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
  out.canonicalize();
  return out;
}

std::string_view NumericModeName(NumericMode mode);
NumericMode ParseNumericMode(std::string_view text);

// Parses "0.25", "1/4", "3", "-2.5e-3" exactly. Throws kParseError.
Rational ParseRational(std::string_view text);
// Parses the same grammar into a double. Throws kParseError.
double ParseDouble(std::string_view text);

// "p/q" (or "p" when q == 1).
std::string RationalToString(const Rational& x);
// Shortest round-trip decimal for a double.
std::string DoubleToString(double x);

template <typename T>
struct Numeric;

template <>
struct Numeric<Rational> {
  static constexpr NumericMode kMode = NumericMode::kExact;

  static Rational FromInt(int64_t v) { return Rational(static_cast<long>(v)); }
  static Rational Parse(std::string_view text) { return ParseRational(text); }
  static double ToDouble(const Rational& x) { return x.get_d(); }
  static std::string ToString(const Rational& x) { return RationalToString(x); }

  static Rational Pow(const Rational& base, uint64_t exp);
  // C(n, k) as an exact integer.
  static Rational Choose(uint64_t n, uint64_t k);

  static bool SameAtom(const Rational& a, const Rational& b, double /*tol*/) {
    return a == b;
  }
  static bool IsNormalized(const Rational& sum) { return sum == 1; }
  // Exact comparisons never need slack.
  static bool LessOrEqual(const Rational& a, const Rational& b) {
    return a <= b;
  }
};

template <>
struct Numeric<double> {
  static constexpr NumericMode kMode = NumericMode::kFloat;

  static double FromInt(int64_t v) { return static_cast<double>(v); }
  static double Parse(std::string_view text) { return ParseDouble(text); }
  static double ToDouble(double x) { return x; }
  static std::string ToString(double x) { return DoubleToString(x); }

  static double Pow(double base, uint64_t exp);
  static double Choose(uint64_t n, uint64_t k);

  static bool SameAtom(double a, double b, double tol);
  static bool IsNormalized(double sum);
  // Comparison with 1e-12 relative slack for accumulated rounding.
  static bool LessOrEqual(double a, double b);
};

// Converts between scalar types. Rational -> double rounds; double ->
// Rational is the exact binary value of the double.
template <typename To, typename From>
To ConvertScalar(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<To, double>) {
    return x.get_d();
  } else {
    return Rational(x);
  }
}

}  // namespace reid

#endif  // REID_NUMERIC_H_
