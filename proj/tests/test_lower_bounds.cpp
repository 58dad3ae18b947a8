#include <gtest/gtest.h>

#include "support.hpp"

using namespace uniso;
using testing_support::fano;
using testing_support::random_subset;

TEST(LowerBounds, FormulaSpotValues) {
  const DesignParams u3 = DesignParams::unital(3);  // (28,63,9,4,1)
  // m = 1: x(18 - (x-1))/2
  EXPECT_EQ(lb_main1(u3, 6, 1), Rational(39));
  EXPECT_EQ(lb_main2(u3, 1), Rational(9));
  EXPECT_EQ(lb_main2(u3, 0), Rational(0));
  // 81 x / (9 + x - 1)
  EXPECT_EQ(lb_main2(u3, 6), Rational(243, 7));
  EXPECT_EQ(lb_main3(u3, 9), make_rational(9 * 4 * 9, 81 - 54));
  EXPECT_EQ(lb_main3(u3, 0), Rational(0));
  EXPECT_EQ(lb_main4(u3, 1, 0), make_rational(4 * 27, 16));
  // For any 2-design r^2 - lambda b = r(r - lambda)/k > 0.
  const DesignParams fp = fano().params();
  EXPECT_EQ(lb_main3(fp, 1), Rational(3));
  EXPECT_THROW(lb_main1(u3, 1, 0), InvalidInput);
  EXPECT_THROW(lb_main2(u3, 29), InvalidInput);
}

TEST(LowerBounds, SinglePointAgainstActual) {
  for (std::uint64_t n : {2U, 3U, 4U}) {
    const DesignParams p = DesignParams::unital(n);
    // Y empty, X one point: y' = n^2.
    EXPECT_LE(lb_main4(p, 1, 0), Rational(static_cast<long>(n * n)));
  }
}

TEST(LowerBounds, EmptySets) {
  const Design d = fano();
  const IsoGraph g(d, Flavor::incidence);
  const auto rep = check_theorem3(g, Bitset(7), Bitset(7), {1, 2, 3});
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.n_x, 0U);
  EXPECT_EQ(rep.n_y, 0U);
}

TEST(LowerBounds, ArcsGiveEqualityWithMOne) {
  const Design d = construct_hermitian(3);
  const IsoGraph g(d, Flavor::incidence);
  const auto arc = find_arc(d, 6).arc;
  for (std::size_t len = 1; len <= arc.size(); ++len) {
    std::vector<std::uint32_t> prefix(arc.begin(), arc.begin() + static_cast<std::ptrdiff_t>(len));
    const auto rep = check_theorem3(g, Bitset::from_indices(28, prefix), Bitset(63), {1});
    EXPECT_TRUE(rep.ok()) << rep.violations.front();
    ASSERT_EQ(rep.equality_ms, std::vector<std::uint64_t>{1});
    EXPECT_EQ(Rational(static_cast<long>(rep.n_x)), lb_main1(g.params(), len, 1));
  }
}

TEST(LowerBounds, RandomPairsOnSmallDesigns) {
  std::mt19937_64 rng(5);
  for (const Design& d : {fano(), construct_order2_unital(), construct_hermitian(3)}) {
    const IsoGraph g(d, Flavor::incidence);
    for (int i = 0; i < 2000; ++i) {
      const double px = std::uniform_real_distribution<double>(0, 1)(rng);
      const double py = std::uniform_real_distribution<double>(0, 1)(rng);
      const auto rep = check_theorem3(g, random_subset(rng, d.v(), px), random_subset(rng, d.b(), py), {1, 2, 3});
      ASSERT_TRUE(rep.ok()) << rep.violations.front();
    }
  }
}

TEST(LowerBounds, NeedsIncidenceGraph) {
  const IsoGraph g(fano(), Flavor::nonincidence);
  EXPECT_THROW(check_theorem3(g, Bitset(7), Bitset(7), {1}), InvalidInput);
}
