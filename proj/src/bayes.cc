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

#include "reid/bayes.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "reid/error.h"

namespace reid {
namespace {

void RequireUsers(uint64_t n) {
  if (n == 0) throw Error(ErrorCode::kZeroUsers, "n must be at least 1");
}

// Expected win probability of a target in a class with Q-mass above `above`,
// tied mass `tied` and below mass `below`, against `decoys` decoys and k
// guesses: E[min(max(k - b, 0), e + 1) / (e + 1)] over the trinomial (b, e).
Rational TieAwareWinExact(const Rational& above, const Rational& tied,
                          const Rational& below, uint64_t decoys, uint64_t k) {
  std::vector<Rational> pow_above(decoys + 1), pow_tied(decoys + 1),
      pow_below(decoys + 1);
  pow_above[0] = pow_tied[0] = pow_below[0] = 1;
  for (uint64_t i = 1; i <= decoys; ++i) {
    pow_above[i] = pow_above[i - 1] * above;
    pow_tied[i] = pow_tied[i - 1] * tied;
    pow_below[i] = pow_below[i - 1] * below;
  }
  Rational total = 0;
  const uint64_t b_max = std::min<uint64_t>(k - 1, decoys);
  for (uint64_t b = 0; b <= b_max; ++b) {
    const Rational choose_b = Numeric<Rational>::Choose(decoys, b);
    for (uint64_t e = 0; e <= decoys - b; ++e) {
      const uint64_t wins = std::min<uint64_t>(k - b, e + 1);
      Rational term = choose_b * Numeric<Rational>::Choose(decoys - b, e) *
                      pow_above[b] * pow_tied[e] * pow_below[decoys - b - e];
      total += term * Fraction(wins, e + 1);
    }
  }
  return total;
}

double TieAwareWinFloat(double above, double tied, double below,
                        uint64_t decoys, uint64_t k,
                        const std::vector<double>& log_factorial) {
  // x^j in log space, with 0^0 = 1.
  auto log_pow = [](double base, uint64_t j) {
    if (j == 0) return 0.0;
    if (base <= 0) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(j) * std::log(base);
  };
  double total = 0;
  const uint64_t b_max = std::min<uint64_t>(k - 1, decoys);
  for (uint64_t b = 0; b <= b_max; ++b) {
    const double lb = log_pow(above, b);
    if (std::isinf(lb)) continue;
    for (uint64_t e = 0; e <= decoys - b; ++e) {
      const uint64_t rest = decoys - b - e;
      const double log_term = log_factorial[decoys] - log_factorial[b] -
                              log_factorial[e] - log_factorial[rest] + lb +
                              log_pow(tied, e) + log_pow(below, rest);
      if (std::isinf(log_term)) continue;
      const uint64_t wins = std::min<uint64_t>(k - b, e + 1);
      total += std::exp(log_term) * static_cast<double>(wins) /
               static_cast<double>(e + 1);
    }
  }
  return total;
}

}  // namespace

template <typename T>
T BetaN(const RatioProfile<T>& profile, uint64_t n) {
  RequireUsers(n);
  const auto& atoms = profile.atoms();
  T sum = 0;
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].f_mass == 0) continue;
    sum += atoms[i].t * (Numeric<T>::Pow(profile.GAt(i), n) -
                         Numeric<T>::Pow(profile.GLeftAt(i), n));
  }
  return profile.f_inf() + sum / Numeric<T>::FromInt(static_cast<int64_t>(n));
}

template <typename T>
std::vector<T> BetaNSequence(const RatioProfile<T>& profile, uint64_t n_max) {
  RequireUsers(n_max);
  const auto& atoms = profile.atoms();
  std::vector<T> pow_g(atoms.size(), T(1));
  std::vector<T> pow_left(atoms.size(), T(1));
  std::vector<T> out;
  out.reserve(n_max);
  for (uint64_t n = 1; n <= n_max; ++n) {
    T sum = 0;
    for (size_t i = 0; i < atoms.size(); ++i) {
      pow_g[i] *= profile.GAt(i);
      pow_left[i] *= profile.GLeftAt(i);
      if (atoms[i].f_mass != 0) sum += atoms[i].t * (pow_g[i] - pow_left[i]);
    }
    out.push_back(profile.f_inf() +
                  sum / Numeric<T>::FromInt(static_cast<int64_t>(n)));
  }
  return out;
}

template <typename T>
T BetaNK(const RatioProfile<T>& profile, uint64_t n, uint64_t k) {
  RequireUsers(n);
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kBadGuessCount,
                "k must lie in [1, n], got k=" + std::to_string(k) +
                    " n=" + std::to_string(n));
  }
  const uint64_t decoys = n - 1;
  std::vector<double> log_factorial;
  if constexpr (std::is_same_v<T, double>) {
    log_factorial.resize(decoys + 1);
    for (uint64_t i = 0; i <= decoys; ++i) {
      log_factorial[i] = std::lgamma(static_cast<double>(i) + 1.0);
    }
  }
  const auto& atoms = profile.atoms();
  T total = profile.f_inf();
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].f_mass == 0) continue;
    T above = T(1) - profile.GAt(i);
    if constexpr (std::is_same_v<T, double>) {
      above = std::max(0.0, above);
      total += atoms[i].f_mass *
               TieAwareWinFloat(above, atoms[i].g_mass, profile.GLeftAt(i),
                                decoys, k, log_factorial);
    } else {
      total += atoms[i].f_mass *
               TieAwareWinExact(above, atoms[i].g_mass, profile.GLeftAt(i),
                                decoys, k);
    }
  }
  return total;
}

template <typename T>
AdvantageReport<T> Advantage(const Distribution<T>& p,
                             const Distribution<T>& q, uint64_t n,
                             double tol_tie) {
  RequireUsers(n);
  const auto profile = RatioProfile<T>::Build(p, q, tol_tie);
  const T n_value = Numeric<T>::FromInt(static_cast<int64_t>(n));
  AdvantageReport<T> report;
  report.n = n;
  report.beta = BetaN(profile, n);
  report.adv_plus = report.beta - T(1) / n_value;
  report.adv_times = n_value * report.beta;
  report.tv_upper = TotalVariation(p, q);
  report.tv_lower = report.tv_upper / n_value;
  // With one user there is no decoy; the lower bound needs n >= 2.
  if (n >= 2 && (!Numeric<T>::LessOrEqual(report.tv_lower, report.adv_plus) ||
                 !Numeric<T>::LessOrEqual(report.adv_plus, report.tv_upper))) {
    throw Error(ErrorCode::kInvariantViolation,
                "advantage " + Numeric<T>::ToString(report.adv_plus) +
                    " escapes [TV/n, TV] = [" +
                    Numeric<T>::ToString(report.tv_lower) + ", " +
                    Numeric<T>::ToString(report.tv_upper) + "]");
  }
  return report;
}

template <typename T>
T AsymptoticsReport<T>::Remainder(uint64_t n) const {
  RequireUsers(n);
  return profile_.f_inf() +
         profile_.max_ratio() / Numeric<T>::FromInt(static_cast<int64_t>(n)) -
         BetaN(profile_, n);
}

template <typename T>
AsymptoticsReport<T> Asymptotics(const Distribution<T>& p,
                                 const Distribution<T>& q, double tol_tie) {
  return AsymptoticsReport<T>(RatioProfile<T>::Build(p, q, tol_tie));
}

template <typename T>
T BetaNExample1(uint64_t n, uint64_t m) {
  RequireUsers(n);
  if (m < 2) {
    throw Error(ErrorCode::kTooFewBins,
                "need at least 2 bins, got " + std::to_string(m));
  }
  // Bin i = [i/m, (i+1)/m): P-mass ((2i+1)/(2m) + 1/2) / m, Q-mass 1/m.
  const T bins = Numeric<T>::FromInt(static_cast<int64_t>(m));
  std::vector<T> p_mass(m), q_mass(m, T(1) / bins);
  for (uint64_t i = 0; i < m; ++i) {
    const T center = Numeric<T>::FromInt(static_cast<int64_t>(2 * i + 1)) /
                     (T(2) * bins);
    p_mass[i] = (center + T(1) / T(2)) / bins;
  }
  const auto p = Distribution<T>::FromProbs(std::move(p_mass));
  const auto q = Distribution<T>::FromProbs(std::move(q_mass));
  return BetaN(RatioProfile<T>::Build(p, q), n);
}

#define REID_INSTANTIATE_BAYES(T)                                             \
  template T BetaN(const RatioProfile<T>&, uint64_t);                         \
  template std::vector<T> BetaNSequence(const RatioProfile<T>&, uint64_t);    \
  template T BetaNK(const RatioProfile<T>&, uint64_t, uint64_t);              \
  template AdvantageReport<T> Advantage(const Distribution<T>&,               \
                                        const Distribution<T>&, uint64_t,     \
                                        double);                              \
  template class AsymptoticsReport<T>;                                        \
  template AsymptoticsReport<T> Asymptotics(const Distribution<T>&,           \
                                            const Distribution<T>&, double);  \
  template T BetaNExample1<T>(uint64_t, uint64_t);

REID_INSTANTIATE_BAYES(Rational)
REID_INSTANTIATE_BAYES(double)

#undef REID_INSTANTIATE_BAYES

}  // namespace reid
