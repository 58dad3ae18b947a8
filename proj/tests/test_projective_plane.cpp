#include <gtest/gtest.h>

#include <set>

#include "uniso/projective_plane.hpp"

using namespace uniso;

namespace {
class PlaneAxioms : public ::testing::TestWithParam<std::uint32_t> {};

ProjectivePlane plane_of(std::uint32_t order) {
  const auto [p, k] = GaloisField::factor_prime_power(order);
  return ProjectivePlane(std::make_shared<const GaloisField>(p, k));
}
}  // namespace

TEST_P(PlaneAxioms, CountsAndIncidence) {
  const auto pl = plane_of(GetParam());
  const std::uint32_t n = GetParam();
  EXPECT_EQ(pl.num_points(), n * n + n + 1);
  EXPECT_EQ(pl.num_lines(), n * n + n + 1);
  std::vector<std::uint32_t> per_point(pl.num_points(), 0);
  for (const auto l : pl.lines()) {
    const auto pts = pl.points_on_line(l);
    ASSERT_EQ(pts.size(), n + 1);
    ASSERT_TRUE(std::is_sorted(pts.begin(), pts.end()));
    for (const auto p : pts) {
      ASSERT_TRUE(pl.incident(p, l));
      ++per_point[p.id];
    }
  }
  for (auto c : per_point) EXPECT_EQ(c, n + 1);
}

TEST_P(PlaneAxioms, TwoPointsOneLine) {
  const auto pl = plane_of(GetParam());
  const auto pts = pl.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const auto l = pl.line_through(pts[i], pts[j]);
      ASSERT_EQ(l, pl.line_through(pts[j], pts[i]));
      ASSERT_TRUE(pl.incident(pts[i], l));
      ASSERT_TRUE(pl.incident(pts[j], l));
    }
}

TEST_P(PlaneAxioms, TwoLinesOnePoint) {
  const auto pl = plane_of(GetParam());
  const auto ls = pl.lines();
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = i + 1; j < ls.size(); ++j) {
      const auto p = pl.meet(ls[i], ls[j]);
      ASSERT_TRUE(pl.incident(p, ls[i]));
      ASSERT_TRUE(pl.incident(p, ls[j]));
    }
}

TEST_P(PlaneAxioms, IdsRoundTripThroughCoordinates) {
  const auto pl = plane_of(GetParam());
  std::set<std::uint32_t> ids;
  for (const auto p : pl.points()) {
    EXPECT_EQ(pl.point_of(pl.coordinates(p)), p);
    ids.insert(p.id);
    // Nonzero scalar multiples name the same point.
    for (const auto s : pl.field().elements()) {
      if (s.is_zero()) continue;
      auto t = pl.coordinates(p);
      for (auto& c : t) c = c * s;
      EXPECT_EQ(pl.point_of(t), p);
    }
  }
  EXPECT_EQ(ids.size(), pl.num_points());
}

INSTANTIATE_TEST_SUITE_P(Orders, PlaneAxioms, ::testing::Values(2U, 3U, 4U, 5U, 7U, 8U, 9U));

TEST(ProjectivePlane, IdEncoding) {
  const auto pl = plane_of(3);
  const auto& f = pl.field();
  EXPECT_EQ(pl.point_of({f.zero(), f.zero(), f.one()}).id, 0U);
  EXPECT_EQ(pl.point_of({f.zero(), f.one(), f.from_int(2)}).id, 3U);
  EXPECT_EQ(pl.point_of({f.one(), f.from_int(1), f.from_int(2)}).id, 1 + 3 + 3 + 2U);
}

TEST(ProjectivePlane, Errors) {
  const auto pl = plane_of(2);
  const auto& f = pl.field();
  EXPECT_THROW(pl.line_through(ProjPoint{1}, ProjPoint{1}), InvalidInput);
  EXPECT_THROW(pl.point_of({f.zero(), f.zero(), f.zero()}), InvalidInput);
}
