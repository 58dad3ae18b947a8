#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace uniso;

TEST(Bounds, GValues) {
  EXPECT_EQ(g_of(2, 0), Rational(0));
  EXPECT_EQ(g_of(2, 2), Rational(9));
  EXPECT_EQ(g_of(2, 3), Rational(12));
  EXPECT_EQ(g_of(3, 6), Rational(45));
  EXPECT_THROW(g_of(2, 6), InvalidInput);
  EXPECT_THROW(g_of(1, 0), InvalidInput);
}

TEST(Bounds, GIncreasingAndConcave) {
  for (std::uint64_t n = 2; n <= 20; ++n) {
    for (std::uint64_t z = 0; z + 2 <= n * n + 1; ++z) {
      const Rational d1 = g_of(n, z + 1) - g_of(n, z), d2 = g_of(n, z + 2) - g_of(n, z + 1);
      ASSERT_GT(d1, 0);
      ASSERT_LE(d2, d1);
    }
  }
}

TEST(Bounds, FloorC) {
  EXPECT_EQ(floor_c(2), 2U);
  EXPECT_EQ(floor_c(3), 6U);
  EXPECT_EQ(floor_c(4), 11U);
  EXPECT_THROW(floor_c(1), InvalidInput);
  // Against a floating-point evaluation where it is unambiguous.
  for (std::uint64_t n = 2; n <= 2000; ++n) {
    const double c = n * static_cast<double>(n) - (std::sqrt(8.0 * n * n + 9) - 3) / 2;
    const double frac = c - std::floor(c);
    if (frac > 1e-6 && frac < 1 - 1e-6) ASSERT_EQ(floor_c(n), static_cast<std::uint64_t>(std::floor(c))) << n;
  }
}

TEST(Bounds, FloorCRoutesAgree) {
  for (std::uint64_t n = 2; n <= 20000; ++n) ASSERT_EQ(floor_c_by_g(n), floor_c_by_sqrt(n)) << n;
  EXPECT_EQ(floor_c_by_g(1000000), floor_c_by_sqrt(1000000));
}

TEST(Bounds, IntervalBounds) {
  auto r2 = theorem1_bounds(2, 4);
  EXPECT_EQ(r2.lower, Rational(7, 10));
  EXPECT_EQ(r2.upper, Rational(7, 10));
  EXPECT_TRUE(r2.pinch);
  EXPECT_EQ(theorem1_bounds(3, 6).lower, Rational(22, 45));
  EXPECT_TRUE(theorem1_bounds(3, 6).pinch);
  EXPECT_EQ(theorem1_bounds(4, 11).lower, Rational(27, 68));
  const auto loose = theorem1_bounds(4, 5);
  EXPECT_FALSE(loose.pinch);
  EXPECT_LT(loose.lower, loose.upper);
  EXPECT_EQ(loose.upper, make_rational(2 * (65 - 5), 272));
  EXPECT_THROW(theorem1_bounds(3, 2), InvalidInput);
}

TEST(Bounds, PinchIffArcReachesFloorC) {
  for (std::uint64_t n = 2; n <= 12; ++n)
    for (std::uint64_t m = 3; m <= n * n + 1; ++m) {
      const auto r = theorem1_bounds(n, m);
      ASSERT_LE(r.lower, r.upper);
      ASSERT_EQ(r.pinch, m >= r.floor_c);
    }
}

TEST(Bounds, NonincidenceValueAndArcCap) {
  EXPECT_EQ(theorem2_value(2), Rational(4, 5));
  EXPECT_EQ(theorem2_value(3), Rational(28, 45));
  EXPECT_EQ(theorem2_value(10), Rational(1001, 5050));
  EXPECT_EQ(corollary4_m_bound(2, Rational(7, 10)), Rational(2));
  for (std::uint64_t n = 2; n <= 30; ++n)
    EXPECT_EQ(corollary4_m_bound(n, theorem1_bounds(n, 3).lower), Rational(static_cast<long>(floor_c(n))));
  EXPECT_THROW(corollary4_m_bound(2, Rational(0)), InvalidInput);
}

// Any set of n^2(n^2+1)/2 blocks is a witness for the non-incidence value.
TEST(Bounds, BlockSetWitnessForNonincidence) {
  const Design h3 = construct_hermitian(3);
  const IsoGraph g(h3, Flavor::nonincidence);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::uint32_t> ids(h3.b());
    std::iota(ids.begin(), ids.end(), 0U);
    std::shuffle(ids.begin(), ids.end(), rng);
    VertexSubset s = VertexSubset::empty_for(g);
    for (int i = 0; i < 45; ++i) s.blocks.set(ids[i]);
    EXPECT_LE(iso_ratio(g, s), theorem2_value(3));
  }
}

TEST(Bounds, SurdComparison) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 9), rad(0, 40);
  for (int i = 0; i < 5000; ++i) {
    const Rational a = make_rational(num(rng), den(rng)), b = make_rational(num(rng), den(rng));
    const BigInt d(rad(rng));
    const long double val = a.get_d() + b.get_d() * std::sqrt(static_cast<long double>(d.get_d()));
    const int s = detail::surd_sign(a, b, d);
    if (std::fabs(val) > 1e-9) ASSERT_EQ(s, val > 0 ? 1 : -1);
  }
  EXPECT_EQ(detail::surd_sign(Rational(3), Rational(-1), BigInt(9)), 0);
  // c(3) = 6 exactly.
  EXPECT_EQ(CValue(3).compare(Rational(6)), 0);
  EXPECT_EQ(CValue(2).compare(Rational(2)), -1);
  EXPECT_EQ(CValue(2).compare(Rational(3)), 1);
}

TEST(Bounds, HAtNSquared) {
  EXPECT_EQ(audit_h(3, Rational(9)), Rational(88, 17));
  EXPECT_LE(audit_h(3, Rational(9)), Rational(6));
}

TEST(Bounds, AuditSmallN) {
  for (std::uint64_t n : {3U, 4U, 5U}) {
    const auto rep = audit_lowerbound_machinery(n);
    EXPECT_FALSE(rep.sampled);
    ASSERT_EQ(rep.checks.size(), 5U);
    for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << n << " " << c.name << " " << c.witness;
  }
  EXPECT_THROW(audit_lowerbound_machinery(2), InvalidInput);
  AuditOptions o;
  o.samples_per_stripe = 64;
  const auto sampled = audit_lowerbound_machinery(20, o);
  EXPECT_TRUE(sampled.sampled);
  EXPECT_TRUE(sampled.passed());
}

TEST(Bounds, ExtremalSetOrder2) {
  const Design d = construct_order2_unital();
  const auto cert = construct_extremal_set(d, find_arc(d, 4).arc);
  EXPECT_EQ(cert.checks.x, 2U);
  EXPECT_EQ(cert.checks.n_x, 7U);
  EXPECT_EQ(cert.blocks.size(), 8U);
  EXPECT_EQ(cert.checks.s, 10U);
  EXPECT_EQ(cert.checks.n_s, 7U);
  EXPECT_EQ(cert.claimed, Rational(7, 10));
  EXPECT_EQ(cert.claimed, brute_force_iso(IsoGraph(d, Flavor::incidence)).ratio);
}

TEST(Bounds, ExtremalSetHermitian) {
  const Design h3 = construct_hermitian(3);
  const auto c3 = construct_extremal_set(h3, find_arc(h3, 6).arc);
  EXPECT_EQ(c3.checks.n_x, 39U);
  EXPECT_EQ(c3.checks.padding, 0U);
  EXPECT_EQ(c3.checks.s, 45U);
  EXPECT_EQ(c3.checks.n_s, 22U);
  EXPECT_EQ(c3.claimed, Rational(22, 45));

  const Design h4 = construct_hermitian(4);
  const auto c4 = construct_extremal_set(h4, find_arc(h4, 11).arc);
  EXPECT_EQ(c4.checks.n_x, 121U);
  EXPECT_EQ(c4.checks.s, 136U);
  EXPECT_EQ(c4.claimed, Rational(27, 68));
}

TEST(Bounds, ExtremalSetFromShortArcIsAnUpperBound) {
  const Design h3 = construct_hermitian(3);
  const auto arc = find_arc(h3, 4).arc;
  const auto cert = construct_extremal_set(h3, arc);
  EXPECT_EQ(cert.checks.x, 4U);
  EXPECT_FALSE(cert.checks.bounds.pinch);
  EXPECT_GE(cert.claimed, cert.checks.bounds.lower);
  EXPECT_LE(cert.claimed, cert.checks.bounds.upper);
}

TEST(Bounds, ExtremalSetRejectsNonArcs) {
  const Design d = construct_order2_unital();
  EXPECT_THROW(construct_extremal_set(d, {0, 1, 2}), InvalidInput);
  EXPECT_THROW(construct_extremal_set(testing_support::fano(), {0, 1}), InvalidInput);
}
