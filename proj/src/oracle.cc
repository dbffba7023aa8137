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

#include "reid/oracle.h"

#include <algorithm>
#include <functional>
#include <string>

#include "reid/error.h"

namespace reid {
namespace {

// Calls visit(counts) for every vector of `slots` nonnegative counts summing
// to `total`.
void ForEachComposition(size_t slots, uint64_t total,
                        const std::function<void(const std::vector<uint64_t>&)>&
                            visit) {
  std::vector<uint64_t> counts(slots, 0);
  std::function<void(size_t, uint64_t)> rec = [&](size_t slot,
                                                   uint64_t left) {
    if (slot + 1 == slots) {
      counts[slot] = left;
      visit(counts);
      return;
    }
    for (uint64_t c = 0; c <= left; ++c) {
      counts[slot] = c;
      rec(slot + 1, left - c);
    }
  };
  if (slots == 0) {
    if (total == 0) visit(counts);
    return;
  }
  rec(0, total);
}

template <typename T>
T Factorial(uint64_t n) {
  T out = 1;
  for (uint64_t i = 2; i <= n; ++i) out *= Numeric<T>::FromInt(static_cast<int64_t>(i));
  return out;
}

void CheckGuesses(uint64_t n, uint64_t k) {
  if (n == 0) throw Error(ErrorCode::kZeroUsers, "n must be at least 1");
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kBadGuessCount,
                "k must lie in [1, n], got k=" + std::to_string(k) +
                    " n=" + std::to_string(n));
  }
}

}  // namespace

Rational BruteForceBeta(const ExactDistribution& p, const ExactDistribution& q,
                        uint64_t n, uint64_t k) {
  CheckGuesses(n, k);
  const std::vector<std::string> universe = LabelUnion(p, q);
  if (universe.size() > kMaxOracleSupport || n > kMaxOracleUsers) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "enumeration limited to support <= " +
                    std::to_string(kMaxOracleSupport) + " and n <= " +
                    std::to_string(kMaxOracleUsers));
  }
  std::vector<Rational> pv, qv;
  for (const std::string& label : universe) {
    pv.push_back(p.ProbOf(label));
    qv.push_back(q.ProbOf(label));
  }
  std::vector<size_t> decoy_labels;  // support of Q
  for (size_t i = 0; i < universe.size(); ++i) {
    if (qv[i] > 0) decoy_labels.push_back(i);
  }
  const uint64_t decoys = n - 1;

  // compare(y, y1) = sign of ratio(y) - ratio(y1), by cross-multiplication;
  // decoy labels always have a finite ratio.
  auto compare = [&](size_t y, size_t y1) {
    if (qv[y1] == 0) return -1;
    const Rational lhs = pv[y] * qv[y1];
    const Rational rhs = pv[y1] * qv[y];
    return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
  };

  const Rational decoy_factorial = Factorial<Rational>(decoys);
  Rational total = 0;
  ForEachComposition(
      decoy_labels.size(), decoys, [&](const std::vector<uint64_t>& counts) {
        Rational prob = decoy_factorial;
        for (size_t j = 0; j < counts.size(); ++j) {
          prob *= Numeric<Rational>::Pow(qv[decoy_labels[j]], counts[j]) /
                  Factorial<Rational>(counts[j]);
        }
        for (size_t y1 = 0; y1 < universe.size(); ++y1) {
          if (pv[y1] == 0) continue;
          uint64_t above = 0, tied = 0;
          for (size_t j = 0; j < counts.size(); ++j) {
            if (counts[j] == 0) continue;
            const int c = compare(decoy_labels[j], y1);
            if (c > 0) above += counts[j];
            if (c == 0) tied += counts[j];
          }
          if (above >= k) continue;
          const uint64_t wins = std::min<uint64_t>(k - above, tied + 1);
          total += pv[y1] * prob *
                   Fraction(wins, tied + 1);
        }
      });
  return total;
}

template <typename T>
T Permanent(const std::vector<std::vector<T>>& matrix) {
  const size_t n = matrix.size();
  for (const auto& row : matrix) {
    if (row.size() != n) {
      throw Error(ErrorCode::kNotSquare, "permanent needs a square matrix");
    }
  }
  if (n > kMaxPermanentSize) {
    throw Error(ErrorCode::kTooLarge,
                "permanent limited to " + std::to_string(kMaxPermanentSize) +
                    "x" + std::to_string(kMaxPermanentSize));
  }
  if (n == 0) return T(1);
  // Ryser: perm(A) = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} a_ij,
  // walking subsets in Gray-code order so each step flips one column.
  std::vector<T> row_sums(n, T(0));
  T total = 0;
  uint64_t gray = 0;
  for (uint64_t step = 1; step < (uint64_t{1} << n); ++step) {
    const uint64_t next = step ^ (step >> 1);
    const uint64_t flipped = next ^ gray;
    const auto col = static_cast<size_t>(__builtin_ctzll(flipped));
    const bool added = (next & flipped) != 0;
    for (size_t i = 0; i < n; ++i) {
      if (added) {
        row_sums[i] += matrix[i][col];
      } else {
        row_sums[i] -= matrix[i][col];
      }
    }
    gray = next;
    T product = 1;
    for (size_t i = 0; i < n && product != 0; ++i) product *= row_sums[i];
    if (product == 0) continue;
    const bool negative = ((n - static_cast<size_t>(__builtin_popcountll(gray))) & 1) != 0;
    if (negative) {
      total -= product;
    } else {
      total += product;
    }
  }
  return total;
}

template <typename T>
T BruteForceBetaHet(const std::vector<Distribution<T>>& rows, size_t target,
                    uint64_t k) {
  const size_t n = rows.size();
  CheckGuesses(n, k);
  if (target >= n) {
    throw Error(ErrorCode::kInvalidArgument, "target index out of range");
  }
  const size_t outputs = rows[0].size();
  if (n > kMaxHetUsers || outputs > kMaxHetOutputs) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "heterogeneous enumeration limited to n <= " +
                    std::to_string(kMaxHetUsers) + " and |Y| <= " +
                    std::to_string(kMaxHetOutputs));
  }
  for (const auto& row : rows) {
    if (row.labels() != rows[0].labels()) {
      throw Error(ErrorCode::kSpaceMismatch,
                  "all rows must share the same output labels");
    }
  }

  // For an output multiset with counts c, the joint probability that the
  // shuffled vector is a given arrangement z and the target sits at position
  // g is rows[target](z_g) * perm(M_g) / n!, where M_g pairs the other users
  // with the other positions. Summing the top-k of these over the n!/prod c!
  // arrangements gives top-k(w) / prod c!.
  T success = 0;
  ForEachComposition(outputs, n, [&](const std::vector<uint64_t>& counts) {
    std::vector<size_t> values;
    for (size_t v = 0; v < outputs; ++v) {
      for (uint64_t c = 0; c < counts[v]; ++c) values.push_back(v);
    }
    std::vector<std::pair<T, uint64_t>> scores;  // (w_v, multiplicity)
    for (size_t v = 0; v < outputs; ++v) {
      if (counts[v] == 0 || rows[target].prob(v) == 0) continue;
      std::vector<size_t> columns = values;
      columns.erase(std::find(columns.begin(), columns.end(), v));
      std::vector<std::vector<T>> minor;
      minor.reserve(n - 1);
      for (size_t i = 0; i < n; ++i) {
        if (i == target) continue;
        std::vector<T> line;
        line.reserve(columns.size());
        for (size_t col : columns) line.push_back(rows[i].prob(col));
        minor.push_back(std::move(line));
      }
      scores.emplace_back(rows[target].prob(v) * Permanent(minor), counts[v]);
    }
    std::sort(scores.begin(), scores.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    T top = 0;
    uint64_t left = k;
    for (const auto& [w, mult] : scores) {
      if (left == 0) break;
      const uint64_t take = std::min(left, mult);
      top += w * Numeric<T>::FromInt(static_cast<int64_t>(take));
      left -= take;
    }
    T denom = 1;
    for (uint64_t c : counts) denom *= Factorial<T>(c);
    success += top / denom;
  });
  return success;
}

template Rational Permanent(const std::vector<std::vector<Rational>>&);
template double Permanent(const std::vector<std::vector<double>>&);
template Rational BruteForceBetaHet(const std::vector<Distribution<Rational>>&,
                                    size_t, uint64_t);
template double BruteForceBetaHet(const std::vector<Distribution<double>>&,
                                  size_t, uint64_t);

}  // namespace reid
