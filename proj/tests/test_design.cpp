#include <gtest/gtest.h>

#include "support.hpp"

using namespace uniso;
using testing_support::fano;

TEST(DesignCore, FanoValidates) {
  const Design d = fano();
  EXPECT_EQ(d.params(), (DesignParams{7, 7, 3, 3, 1}));
  EXPECT_FALSE(d.unital_order().has_value());
  for (std::uint32_t p = 0; p < 7; ++p) EXPECT_EQ(d.blocks_through(p).size(), 3U);
}

TEST(DesignCore, RejectsBrokenDesigns) {
  // A pair covered twice.
  EXPECT_THROW(Design(7, {{0, 1, 2}, {0, 1, 3}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}}), VerificationFailure);
  // Missing block.
  EXPECT_THROW(Design(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}}), VerificationFailure);
  // Point out of range and repeated point.
  EXPECT_THROW(Design(7, {{0, 1, 7}}), InvalidInput);
  EXPECT_THROW(Design(7, {{0, 0, 1}}), InvalidInput);
  // Repeated block.
  EXPECT_THROW(Design(3, {{0, 1}, {0, 1}, {1, 2}, {0, 2}}), InvalidInput);
}

TEST(DesignCore, ErrorNamesOffendingPair) {
  try {
    Design(7, {{0, 1, 2}, {0, 1, 3}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
    FAIL() << "expected a verification failure";
  } catch (const VerificationFailure& e) {
    EXPECT_NE(std::string(e.what()).find("pair"), std::string::npos) << e.what();
  }
}

TEST(DesignCore, ComplementOfFano) {
  const Design c = complement(fano());
  EXPECT_EQ(c.params(), (DesignParams{7, 7, 4, 4, 2}));
  EXPECT_EQ(c.params(), fano().params().complement());
  EXPECT_EQ(c.provenance()["kind"], "complement");
}

TEST(DesignCore, UnitalParameters) {
  EXPECT_EQ(DesignParams::unital(2), (DesignParams{9, 12, 4, 3, 1}));
  EXPECT_EQ(DesignParams::unital(3), (DesignParams{28, 63, 9, 4, 1}));
  EXPECT_EQ(DesignParams::unital(4), (DesignParams{65, 208, 16, 5, 1}));
}

TEST(Unitals, Order2IsAffinePlane) {
  const Design d = construct_order2_unital();
  EXPECT_EQ(d.params(), DesignParams::unital(2));
  EXPECT_EQ(d.unital_order(), 2U);
}

TEST(Unitals, Hermitian) {
  for (std::uint32_t q : {3U, 4U, 5U}) {
    SecantStats st;
    const Design d = construct_hermitian(q, &st);
    EXPECT_EQ(d.params(), DesignParams::unital(q));
    EXPECT_EQ(st.tangent_lines, q * q * q + 1);
    EXPECT_EQ(st.secant_lines, d.b());
    EXPECT_EQ(d.provenance()["kind"], "hermitian");
    EXPECT_EQ(d.provenance()["points"].size(), d.v());
  }
  EXPECT_THROW(construct_hermitian(2), InvalidInput);
  EXPECT_THROW(construct_hermitian(6), InvalidInput);
}

TEST(Unitals, HermitianPointsSatisfyTheCurve) {
  auto f = GaloisField::quadratic_over(3);
  ProjectivePlane pl(f);
  const auto pts = hermitian_points(pl);
  EXPECT_EQ(pts.size(), 28U);
  for (const auto p : pts) {
    const auto x = pl.coordinates(p);
    EXPECT_TRUE((x[0].pow(4) + x[1].pow(4) + x[2].pow(4)).is_zero());
  }
}

// Independent check of the admissibility test: an admissible pair must give a
// point set that every ambient line meets in 1 or q+1 points.
TEST(Unitals, AdmissiblePairsGiveUnitals) {
  for (std::uint32_t q : {2U, 3U}) {
    auto f = GaloisField::quadratic_over(q);
    ProjectivePlane pl(f);
    std::size_t admissible = 0, unital_sets = 0;
    for (const auto a : f->elements())
      for (const auto b : f->elements()) {
        const bool adm = bm_admissibility(*f, a, b).admissible;
        bool is_unital = true;
        try {
          detail::embedded_unital(pl, bm_points(pl, a, b), q, {{"kind", "probe"}}, nullptr);
        } catch (const VerificationFailure&) {
          is_unital = false;
        }
        admissible += adm;
        unital_sets += is_unital;
        if (adm) EXPECT_TRUE(is_unital) << "q=" << q << " alpha=" << a.index() << " beta=" << b.index();
        if (q == 3) EXPECT_EQ(adm, is_unital) << "alpha=" << a.index() << " beta=" << b.index();
      }
    EXPECT_GT(admissible, 0U) << "q=" << q;
  }
}

TEST(Unitals, BmOddQAdmissibleWithBetaInSubfield) {
  auto f = GaloisField::quadratic_over(3);
  std::size_t with_sub_beta = 0;
  for (const auto& [ai, bi] : admissible_bm_pairs(*f)) {
    if (!f->in_subfield(f->element(bi))) continue;
    ++with_sub_beta;
    // With beta in GF(q) the discriminant is 4 alpha^(q+1): the norm must be a non-square.
    EXPECT_FALSE(f->subfield_is_square(f->norm_to_subfield(f->element(ai))));
  }
  EXPECT_EQ(with_sub_beta, 12U);
  const Design d = construct_bm(3, 4, 0);
  EXPECT_EQ(d.params(), DesignParams::unital(3));
}

TEST(Unitals, BmEvenQ) {
  auto f = GaloisField::quadratic_over(4);
  const auto pairs = admissible_bm_pairs(*f);
  ASSERT_FALSE(pairs.empty());
  const auto [a, b] = pairs.front();
  EXPECT_FALSE(f->in_subfield(f->element(b)));
  const Design d = construct_bm(f, f->element(a), f->element(b));
  EXPECT_EQ(d.params(), DesignParams::unital(4));
}

TEST(Unitals, InadmissibleBmNamesCondition) {
  try {
    construct_bm(3, 0, 0);
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("discriminant"), std::string::npos);
  }
  auto f = GaloisField::quadratic_over(4);
  try {
    construct_bm(f, f->one(), f->one());
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("beta lies in GF(q)"), std::string::npos);
  }
}
