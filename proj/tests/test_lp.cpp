#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace descr;
using oracle::V;

TEST(Feasible, TrivialSystems) {
  LinearSystem a(1);
  a.add_ge(V({1}), 1);
  a.add_ge(V({-1}), 0);
  EXPECT_FALSE(feasible(a));

  LinearSystem b(2);
  b.add_ge(V({1, 1}), 1);
  b.add_ge(V({1, 0}), 0);
  b.add_ge(V({0, 1}), 0);
  auto r = feasible(b);
  ASSERT_TRUE(r);
  EXPECT_TRUE(b.satisfied_by(r.witness));

  LinearSystem c(1);
  c.add_ge(V({1}), 1);
  ASSERT_TRUE(feasible(c));

  LinearSystem empty(3);
  EXPECT_TRUE(feasible(empty));
}

TEST(Feasible, EqualitiesAndNegativeRhs) {
  LinearSystem s(3);
  s.add_eq(V({1, 1, 1}), 1);
  s.add_ge(V({1, -1, 0}), -2);
  s.add_le(V({0, 0, 1}), -5);
  auto r = feasible(s);
  ASSERT_TRUE(r);
  EXPECT_TRUE(s.satisfied_by(r.witness));

  LinearSystem t(2);
  t.add_eq(V({1, 1}), 1);
  t.add_eq(V({2, 2}), 3);
  EXPECT_FALSE(feasible(t));
}

TEST(Feasible, SeparatingSystemForFaceA) {
  auto fa = oracle::fixture("eq3_fa.poly");
  auto sys = separating_system(fa, V({3, 2}));
  auto r = feasible(sys);
  ASSERT_TRUE(r);
  EXPECT_TRUE(sys.satisfied_by(r.witness));
  EXPECT_TRUE(verify_separating_hyperplane(fa, V({1, 0}), 2, true));
}

TEST(Feasible, AgreesWithFourierMotzkin) {
  std::mt19937 rng(2024);
  int feasible_count = 0;
  for (int t = 0; t < 300; ++t) {
    auto sys = oracle::random_system(rng);
    auto r = feasible(sys);
    ASSERT_EQ(r.feasible, oracle::fm_feasible(sys)) << "system " << t;
    if (r) {
      EXPECT_TRUE(sys.satisfied_by(r.witness));
      ++feasible_count;
    }
  }
  EXPECT_GT(feasible_count, 30);
  EXPECT_LT(feasible_count, 290);
}

TEST(Feasible, ScalingDoesNotChangeStatus) {
  std::mt19937 rng(77);
  for (int t = 0; t < 100; ++t) {
    auto sys = oracle::random_system(rng);
    LinearSystem scaled(sys.unknowns);
    Rational k(7, 3);
    for (const auto& row : sys.rows) scaled.add(k * row.coeffs, k * row.rhs, row.relation);
    EXPECT_EQ(feasible(sys).feasible, feasible(scaled).feasible);
  }
}

TEST(Feasible, RejectsRowLengthMismatch) {
  LinearSystem s(2);
  EXPECT_THROW(s.add_ge(V({1}), 0), std::invalid_argument);
}

TEST(SegmentSeparation, BoxExample) {
  auto ss = signed_support(oracle::fixture("ex_box.poly"));
  auto sep = separate_segment_from_hull(V({0, 4}), V({4, 4}), ss.positives);
  ASSERT_TRUE(sep);
  EXPECT_TRUE(verify_segment_separation(V({0, 4}), V({4, 4}), ss.positives, *sep));
  Rational lo = std::min(dot(sep->w, V({0, 4})), dot(sep->w, V({4, 4})));
  for (const auto& a : ss.positives) EXPECT_LT(dot(sep->w, a), lo);
}

TEST(SegmentSeparation, Infeasible) {
  EXPECT_FALSE(separate_segment_from_hull(V({0, 0}), V({0, 0}), {V({0, 0})}));
  auto ss = signed_support(oracle::fixture("eq2.poly"));
  EXPECT_FALSE(separate_segment_from_hull(V({0, 3}), V({0, 1}), ss.positives));
}

TEST(SegmentSeparation, AgreesWithContainmentOracle) {
  // the segment misses conv(S) iff no convex combination of S equals a point
  // t*b1 + (1-t)*b2; decided here by Fourier-Motzkin on the weights.
  std::mt19937 rng(9);
  for (int t = 0; t < 60; ++t) {
    auto s = oracle::random_points(rng, 2, 4, 4);
    auto ends = oracle::random_points(rng, 2, 2, 4);
    Vec b1 = ends[0], b2 = ends.back();
    std::size_t k = s.size();
    LinearSystem meet(k + 1);
    for (std::size_t c = 0; c < 2; ++c) {
      Vec row(k + 1);
      for (std::size_t i = 0; i < k; ++i) row[i] = s[i][c];
      row[k] = b2[c] - b1[c];
      meet.add_eq(row, b2[c]);
    }
    Vec ones(k + 1, Rational(1));
    ones[k] = 0;
    meet.add_eq(ones, 1);
    for (std::size_t i = 0; i <= k; ++i) meet.add_ge(unit(k + 1, i), 0);
    meet.add_ge(negated(unit(k + 1, k)), -1);
    bool disjoint = !oracle::fm_feasible(meet);
    auto sep = separate_segment_from_hull(b1, b2, s);
    EXPECT_EQ(sep.has_value(), disjoint);
    if (sep) EXPECT_TRUE(verify_segment_separation(b1, b2, s, *sep));
  }
}
