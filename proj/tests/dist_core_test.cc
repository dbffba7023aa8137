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

#include <cmath>

#include "gtest/gtest.h"
#include "reid/distribution.h"
#include "reid/error.h"
#include "reid/numeric.h"
#include "reid/ratio_profile.h"
#include "test_util.h"

namespace reid {
namespace {

using ::reid::testing::Letters;
using ::reid::testing::RandomPair;
using ::reid::testing::Rng;

Rational Q(const char* text) { return ParseRational(text); }

ExactDistribution Exact(std::vector<const char*> probs) {
  std::vector<Rational> v;
  for (const char* p : probs) v.push_back(Q(p));
  return ExactDistribution::FromProbs(std::move(v));
}

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvariantViolation;
}

TEST(NumericTest, ParsesDecimalsAndFractionsExactly) {
  EXPECT_EQ(ParseRational("0.25"), Rational(1, 4));
  EXPECT_EQ(ParseRational("3/12"), Rational(1, 4));
  EXPECT_EQ(ParseRational("-2.5e-3"), Rational(-1, 400));
  EXPECT_EQ(ParseRational("7"), Rational(7));
  EXPECT_EQ(ParseRational("1e2"), Rational(100));
  EXPECT_EQ(CodeOf([] { ParseRational("1/0"); }), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { ParseRational("abc"); }), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { ParseRational(""); }), ErrorCode::kParseError);
  EXPECT_DOUBLE_EQ(ParseDouble("1/4"), 0.25);
  EXPECT_DOUBLE_EQ(ParseDouble("0.1"), 0.1);
}

TEST(NumericTest, FormatsRoundTrip) {
  EXPECT_EQ(RationalToString(Rational(3, 4)), "3/4");
  EXPECT_EQ(RationalToString(Rational(2)), "2");
  EXPECT_EQ(DoubleToString(0.1), "0.1");
  const double x = 1.0 / 3.0;
  EXPECT_EQ(ParseDouble(DoubleToString(x)), x);
}

TEST(NumericTest, PowAndChoose) {
  EXPECT_EQ(Numeric<Rational>::Pow(Rational(2, 3), 3), Rational(8, 27));
  EXPECT_EQ(Numeric<Rational>::Pow(Rational(5, 7), 0), Rational(1));
  EXPECT_EQ(Numeric<Rational>::Choose(10, 3), Rational(120));
  EXPECT_EQ(Numeric<Rational>::Choose(3, 5), Rational(0));
  EXPECT_DOUBLE_EQ(Numeric<double>::Choose(10, 3), 120.0);
  EXPECT_NEAR(Numeric<double>::Choose(100, 50) / 1.0089134454556419e29, 1.0,
              1e-10);
}

TEST(NumericTest, FloatTieToleranceIsRelative) {
  EXPECT_TRUE(Numeric<double>::SameAtom(1.0, 1.0 + 1e-13, 1e-12));
  EXPECT_FALSE(Numeric<double>::SameAtom(1.0, 1.0 + 1e-9, 1e-12));
  EXPECT_TRUE(Numeric<double>::SameAtom(1e6, 1e6 * (1 + 5e-13), 1e-12));
}

TEST(DistributionTest, CreateValidates) {
  EXPECT_NO_THROW(ExactDistribution::Create({"a", "b"}, {Q("1/2"), Q("1/2")}));
  EXPECT_NO_THROW(ExactDistribution::Create({"a"}, {Q("1")}));
  EXPECT_EQ(CodeOf([] { FloatDistribution::Create({"a", "b"}, {0.6, 0.5}); }),
            ErrorCode::kNotNormalized);
  EXPECT_EQ(CodeOf([] {
              ExactDistribution::Create({"a", "b"}, {Q("3/2"), Q("-1/2")});
            }),
            ErrorCode::kNegativeProbability);
  EXPECT_EQ(CodeOf([] {
              ExactDistribution::Create({"a", "a"}, {Q("1/2"), Q("1/2")});
            }),
            ErrorCode::kDuplicateLabel);
  EXPECT_EQ(CodeOf([] { ExactDistribution::Create({}, {}); }),
            ErrorCode::kZeroSize);
}

TEST(DistributionTest, UniformAndZipf) {
  const auto u4 = Uniform<Rational>(4);
  for (const Rational& p : u4.probs()) EXPECT_EQ(p, Rational(1, 4));
  EXPECT_EQ(Uniform<Rational>(1).prob(0), Rational(1));
  EXPECT_EQ(TotalVariation(Uniform<Rational>(3), Uniform<Rational>(3)), 0);

  const auto z = Zipf<Rational>(2, 1.0);
  EXPECT_EQ(z.prob(0), Rational(2, 3));
  EXPECT_EQ(z.prob(1), Rational(1, 3));
  EXPECT_EQ(CodeOf([] { Zipf<Rational>(4, 0.5); }), ErrorCode::kInvalidArgument);

  const auto flat = Zipf<double>(5, 1e-12);
  for (double p : flat.probs()) EXPECT_NEAR(p, 0.2, 1e-10);

  const auto big = Zipf<double>(10000, 0.7);
  double sum = 0;
  for (double p : big.probs()) sum += p;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_GT(big.prob(0), big.prob(1));
}

TEST(DistributionTest, TotalVariationExamples) {
  EXPECT_EQ(TotalVariation(Exact({"1", "0"}), Exact({"0", "1"})), 1);
  EXPECT_EQ(TotalVariation(Exact({"1/2", "1/2"}), Exact({"1/4", "3/4"})),
            Rational(1, 4));
  // Labels outside one support count as probability zero.
  const auto p = ExactDistribution::Create({"a"}, {Q("1")});
  const auto q = ExactDistribution::Create({"b"}, {Q("1")});
  EXPECT_EQ(TotalVariation(p, q), 1);
}

TEST(DistributionTest, TotalVariationIsAMetric) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = testing::RandomDistribution(rng, 5);
    const auto b = testing::RandomDistribution(rng, 5);
    const auto c = testing::RandomDistribution(rng, 5);
    EXPECT_EQ(TotalVariation(a, b), TotalVariation(b, a));
    EXPECT_EQ(TotalVariation(a, a), 0);
    EXPECT_LE(TotalVariation(a, c), TotalVariation(a, b) + TotalVariation(b, c));
    if (a.probs() != b.probs()) EXPECT_GT(TotalVariation(a, b), 0);
  }
}

TEST(RatioProfileTest, Examples) {
  const auto same = RatioProfile<Rational>::Build(Uniform<Rational>(3),
                                                  Uniform<Rational>(3));
  ASSERT_EQ(same.atoms().size(), 1u);
  EXPECT_EQ(same.atoms()[0].t, 1);
  EXPECT_EQ(same.atoms()[0].f_mass, 1);
  EXPECT_EQ(same.atoms()[0].g_mass, 1);
  EXPECT_EQ(same.f_inf(), 0);
  EXPECT_EQ(same.max_ratio(), 1);
  EXPECT_EQ(same.G(Rational(1)), 1);
  EXPECT_EQ(same.GLeft(Rational(1)), 0);

  const auto half = RatioProfile<Rational>::Build(Exact({"1/2", "1/2"}),
                                                  Exact({"0", "1"}));
  ASSERT_EQ(half.atoms().size(), 1u);
  EXPECT_EQ(half.atoms()[0].t, Rational(1, 2));
  EXPECT_EQ(half.atoms()[0].f_mass, Rational(1, 2));
  EXPECT_EQ(half.atoms()[0].g_mass, 1);
  EXPECT_EQ(half.f_inf(), Rational(1, 2));
  EXPECT_EQ(half.max_ratio(), Rational(1, 2));
  EXPECT_EQ(half.label_class()[0], RatioProfile<Rational>::kInfiniteClass);

  const auto rr = RatioProfile<Rational>::Build(Exact({"3/4", "1/4"}),
                                                Exact({"1/4", "3/4"}));
  ASSERT_EQ(rr.atoms().size(), 2u);
  EXPECT_EQ(rr.atoms()[0].t, Rational(1, 3));
  EXPECT_EQ(rr.atoms()[0].f_mass, Rational(1, 4));
  EXPECT_EQ(rr.atoms()[0].g_mass, Rational(3, 4));
  EXPECT_EQ(rr.atoms()[1].t, 3);
  EXPECT_EQ(rr.atoms()[1].f_mass, Rational(3, 4));
  EXPECT_EQ(rr.max_ratio(), 3);
  EXPECT_EQ(rr.G(Rational(1)), Rational(3, 4));
  EXPECT_EQ(rr.G(Rational(3)), 1);
  EXPECT_EQ(rr.GLeft(Rational(3)), Rational(3, 4));
}

TEST(RatioProfileTest, TiedRatiosShareAnAtom) {
  const auto p = Exact({"1/4", "1/4", "1/2"});
  const auto q = Exact({"1/8", "1/8", "3/4"});
  const auto profile = RatioProfile<Rational>::Build(p, q);
  ASSERT_EQ(profile.atoms().size(), 2u);
  EXPECT_EQ(profile.atoms()[1].t, 2);
  EXPECT_EQ(profile.atoms()[1].g_mass, Rational(1, 4));
  EXPECT_EQ(profile.label_class()[0], profile.label_class()[1]);
}

TEST(RatioProfileTest, ZeroRatioAtomIsKept) {
  const auto profile = RatioProfile<Rational>::Build(Exact({"1", "0"}),
                                                     Exact({"1/2", "1/2"}));
  ASSERT_EQ(profile.atoms().size(), 2u);
  EXPECT_EQ(profile.atoms()[0].t, 0);
  EXPECT_EQ(profile.atoms()[0].f_mass, 0);
  EXPECT_EQ(profile.atoms()[0].g_mass, Rational(1, 2));
}

TEST(RatioProfileTest, ConservationAndIntegralIdentities) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto [p, q] = RandomPair(rng, 6);
    const auto profile = RatioProfile<Rational>::Build(p, q);
    Rational f = profile.f_inf(), g = 0;
    for (const auto& atom : profile.atoms()) {
      EXPECT_EQ(atom.f_mass, atom.t * atom.g_mass);
      f += atom.f_mass;
      g += atom.g_mass;
    }
    EXPECT_EQ(f, 1);
    EXPECT_EQ(g, 1);
    const Rational m = profile.max_ratio();
    EXPECT_EQ(profile.IntegralG(0, m), m - 1 + profile.f_inf());
    EXPECT_EQ(profile.IntegralG(0, 1), TotalVariation(p, q));
  }
}

TEST(RatioProfileTest, FloatGroupingUsesTolerance) {
  const auto p = FloatDistribution::Create(
      Letters(3), {0.2, 0.2 * (1 + 1e-14), 0.6 - 0.2 * 1e-14});
  const auto q = FloatDistribution::Create(Letters(3), {0.25, 0.25, 0.5});
  EXPECT_EQ(RatioProfile<double>::Build(p, q).atoms().size(), 2u);
  EXPECT_EQ(RatioProfile<double>::Build(p, q, 0.0).atoms().size(), 3u);
}

TEST(RatioProfileTest, IntegralRejectsBadBounds) {
  const auto profile = RatioProfile<Rational>::Build(Uniform<Rational>(2),
                                                     Uniform<Rational>(2));
  EXPECT_EQ(CodeOf([&] { profile.IntegralG(Rational(2), Rational(1)); }),
            ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace reid
