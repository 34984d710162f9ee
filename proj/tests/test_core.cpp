#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace descr;
using oracle::V;

namespace {

bool same_set(std::vector<Vec> a, std::vector<Vec> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

SignSequence signs(std::initializer_list<int> s) {
  SignSequence out;
  int e = 0;
  for (int x : s) out.push_back({Rational(e++), x});
  return out;
}

}  // namespace

TEST(Signomial, MergesAndOrdersTerms) {
  Signomial f(2, {{3, V({1, 0})}, {-1, V({0, 0})}, {-3, V({1, 0})}, {2, V({0, 1})}});
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.terms()[0].exponent, V({0, 0}));
  EXPECT_EQ(f.terms()[1].exponent, V({0, 1}));
  EXPECT_EQ(f.coefficient(V({1, 0})), 0);
  EXPECT_THROW(Signomial(0), std::invalid_argument);
  EXPECT_THROW(Signomial(2, {{1, V({1})}}), std::invalid_argument);
}

TEST(Signomial, SignedSupportOfRunningExample) {
  auto ss = signed_support(oracle::fixture("eq2.poly"));
  EXPECT_TRUE(same_set(ss.positives, {V({2, 3}), V({1, 3}), V({0, 4}), V({2, 0}), V({0, 2}), V({0, 0})}));
  EXPECT_TRUE(same_set(ss.negatives, {V({3, 2}), V({2, 1}), V({0, 3}), V({0, 1})}));
}

TEST(Signomial, SignedSupportSmallCases) {
  auto ss = signed_support(Signomial(1, {{-1, V({1})}}));
  EXPECT_TRUE(ss.positives.empty());
  EXPECT_EQ(ss.negatives, std::vector<Vec>{V({1})});
  auto p = signed_support(oracle::fixture("proof24.poly"));
  EXPECT_EQ(p.negatives, std::vector<Vec>{V({1, 1})});
  EXPECT_EQ(p.positives.size(), 4u);
}

TEST(Signomial, RestrictionGivesFaceSignomials) {
  auto f = oracle::fixture("eq2.poly");
  auto fa = oracle::fixture("eq3_fa.poly");
  auto fb = oracle::fixture("eq4_fb.poly");
  EXPECT_EQ(restrict_to(f, fa.support()), fa);
  EXPECT_EQ(restrict_to(f, fb.support()), fb);
  EXPECT_EQ(fa.size(), 8u);
  EXPECT_EQ(fb.size(), 8u);
  EXPECT_EQ(restrict_to(f, f.support()), f);
  EXPECT_TRUE(restrict_to(f, {V({9, 9})}).empty());
}

TEST(Signomial, RestrictIsIdempotent) {
  std::mt19937 rng(11);
  for (int t = 0; t < 50; ++t) {
    auto f = oracle::random_signomial(rng, 2, 8);
    auto s = oracle::random_points(rng, 2, 12, 5);
    auto once = restrict_to(f, s);
    EXPECT_EQ(restrict_to(once, s), once);
  }
}

TEST(Evaluate, KnownValues) {
  Signomial one(2, {{1, V({0, 0})}});
  EXPECT_DOUBLE_EQ(evaluate_log(one, {3.0, -2.0}), 1.0);
  EXPECT_DOUBLE_EQ(evaluate_log(oracle::fixture("two_roots.poly"), {0.0}), 1.0);
  EXPECT_NEAR(evaluate_log(oracle::fixture("eq2.poly"), {0.0, 0.0}), -3.0, 1e-12);
  EXPECT_EQ(evaluate_log(Signomial(1), {0.5}), 0.0);
}

TEST(Evaluate, OverflowIsARangeError) {
  Signomial f(1, {{1, V({1000})}});
  EXPECT_THROW(evaluate_log(f, {10.0}), std::range_error);
}

TEST(Evaluate, DroppingNegativeTermsNeverDecreases) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> y(-3, 3);
  for (int t = 0; t < 40; ++t) {
    auto f = oracle::random_signomial(rng, 2, 8);
    auto ss = signed_support(f);
    std::vector<Vec> keep = ss.positives;
    if (!ss.negatives.empty()) keep.push_back(ss.negatives.front());
    auto r = restrict_to(f, keep);
    for (int k = 0; k < 10; ++k) {
      std::vector<double> p{y(rng), y(rng)};
      double fv = evaluate_log(f, p), rv = evaluate_log(r, p);
      EXPECT_GE(rv, fv - 1e-9 * (1 + std::abs(fv)));
    }
  }
}

TEST(SignVariations, Examples) {
  EXPECT_EQ(sign_variations(signs({1, 1, 1})), 0u);
  EXPECT_EQ(sign_variations(signs({-1, 1, 1, 1, -1})), 2u);
  EXPECT_EQ(sign_variations(signs({1, -1})), 1u);
  EXPECT_EQ(sign_variations({}), 0u);
}

TEST(SignVariations, ReversalInvariant) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> len(0, 9), bit(0, 1);
  for (int t = 0; t < 100; ++t) {
    SignSequence s;
    int n = len(rng);
    for (int i = 0; i < n; ++i) s.push_back({Rational(i), bit(rng) ? 1 : -1});
    SignSequence r(s.rbegin(), s.rend());
    EXPECT_EQ(sign_variations(s), sign_variations(r));
  }
}

TEST(InducedSequence, GroupsByDegree) {
  auto f = oracle::fixture("eq2.poly");
  auto seq = induced_sequence(f, V({1, 0}), {1.0, 1.0});
  ASSERT_EQ(seq.size(), 4u);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(seq[k].exponent, k);
  EXPECT_EQ(seq[0].sign, -1);
  EXPECT_EQ(seq[1].sign, 1);
  EXPECT_EQ(seq[2].sign, 1);
  EXPECT_EQ(seq[3].sign, -1);

  auto single = induced_sequence(Signomial(1, {{-1, V({1})}}), V({1}), {1.0});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].exponent, 1);
  EXPECT_EQ(single[0].sign, -1);

  auto fb = induced_sequence(oracle::fixture("eq4_fb.poly"), V({-1, 0}), {1.0, 1.0});
  ASSERT_EQ(fb.size(), 3u);
  EXPECT_EQ(fb[0].exponent, -2);
  EXPECT_EQ(fb[1].exponent, -1);
  EXPECT_EQ(fb[2].exponent, 0);
}

TEST(Rational, ParsingAndPrimitive) {
  EXPECT_EQ(to_string(parse_rational("9.5")), "19/2");
  EXPECT_EQ(to_string(parse_rational("30.5")), "61/2");
  EXPECT_EQ(to_string(parse_rational("-3/6")), "-1/2");
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  Vec v{Rational(1, 2), Rational(-3, 2), 0};
  EXPECT_EQ(primitive(v), V({1, -3, 0}));
  EXPECT_EQ(sign_canonical(V({0, -2, 4})), V({0, 2, -4}));
}

TEST(Rational, NullSpaceAndSolve) {
  std::vector<Vec> a{V({1, 1, 0}), V({0, 1, 1})};
  auto ns = null_space(a, 3);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_EQ(dot(a[0], ns[0]), 0);
  EXPECT_EQ(dot(a[1], ns[0]), 0);
  EXPECT_EQ(rank(a, 3), 2u);
  auto x = solve_square({V({2, 1}), V({1, 3})}, V({3, 5}));
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], Rational(4, 5));
  EXPECT_EQ((*x)[1], Rational(7, 5));
  EXPECT_FALSE(solve_square({V({1, 2}), V({2, 4})}, V({1, 1})));
}
