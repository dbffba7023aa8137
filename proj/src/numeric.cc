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

#include "reid/numeric.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "reid/error.h"

namespace reid {

std::string_view NumericModeName(NumericMode mode) {
  return mode == NumericMode::kExact ? "exact" : "float";
}

NumericMode ParseNumericMode(std::string_view text) {
  if (text == "exact") return NumericMode::kExact;
  if (text == "float") return NumericMode::kFloat;
  throw Error(ErrorCode::kParseError,
              "unknown numeric mode '" + std::string(text) + "'");
}

namespace {

[[noreturn]] void BadNumber(std::string_view text) {
  throw Error(ErrorCode::kParseError,
              "malformed number '" + std::string(text) + "'");
}

bool AllDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

// [sign] digits [. digits] [e|E [sign] digits]
Rational ParseDecimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (size_t e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!AllDigits(exp_part) || exp_part.size() > 6) BadNumber(text);
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (size_t dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) BadNumber(text);
    if (!int_part.empty() && !AllDigits(int_part)) BadNumber(text);
    if (!frac_part.empty() && !AllDigits(frac_part)) BadNumber(text);
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!AllDigits(s)) BadNumber(text);
    digits = std::string(s);
  }
  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational value = exponent >= 0 ? Rational(mantissa * scale)
                                 : Rational(mantissa, scale);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  std::string_view s = Trim(text);
  if (s.empty()) BadNumber(text);
  if (size_t slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = ParseDecimal(Trim(s.substr(0, slash)));
    Rational den = ParseDecimal(Trim(s.substr(slash + 1)));
    if (den == 0) BadNumber(text);
    return num / den;
  }
  return ParseDecimal(s);
}

double ParseDouble(std::string_view text) {
  std::string_view s = Trim(text);
  if (s.find('/') != std::string_view::npos) {
    return ParseRational(s).get_d();
  }
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    BadNumber(text);
  }
  return value;
}

std::string RationalToString(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string DoubleToString(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

Rational Numeric<Rational>::Pow(const Rational& base, uint64_t exp) {
  // Powers of a canonical fraction stay canonical.
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
  return out;
}

Rational Numeric<Rational>::Choose(uint64_t n, uint64_t k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  return Rational(c);
}

double Numeric<double>::Pow(double base, uint64_t exp) {
  if (exp == 0) return 1.0;
  return std::pow(base, static_cast<double>(exp));
}

double Numeric<double>::Choose(uint64_t n, uint64_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  if (n <= 60) {
    double c = 1.0;
    for (uint64_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / i;
    return std::round(c);
  }
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0));
}

bool Numeric<double>::SameAtom(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(a));
}

bool Numeric<double>::IsNormalized(double sum) {
  return std::fabs(sum - 1.0) <= kFloatNormTolerance;
}

bool Numeric<double>::LessOrEqual(double a, double b) {
  return a <= b + 1e-12 * std::max(1.0, std::fabs(b));
}

}  // namespace reid
