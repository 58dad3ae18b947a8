#include <gtest/gtest.h>

#include "support.hpp"

using namespace uniso;
using nlohmann::json;

TEST(Io, Sha256KnownVector) {
  EXPECT_EQ(io::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Io, FractionRoundTrip) {
  const Rational small(22, 45);
  EXPECT_EQ(io::fraction_from_json(io::fraction_json(small)), small);
  EXPECT_EQ(io::fraction_json(small)["decimal"], "0.488888888889");
  const Rational huge = make_rational(BigInt("123456789012345678901234567890"), BigInt("7"));
  const json j = io::fraction_json(huge);
  EXPECT_TRUE(j["num"].is_string());
  EXPECT_EQ(io::fraction_from_json(j), huge);
  EXPECT_THROW(io::fraction_from_json(json{{"num", 1}, {"den", 0}}), InvalidInput);
}

TEST(Io, DesignRoundTrip) {
  const Design d = construct_hermitian(3);
  const json j = io::design_json(d);
  const Design back = io::design_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.blocks(), d.blocks());
  EXPECT_EQ(back.provenance(), d.provenance());
  EXPECT_EQ(io::design_hash(back), io::design_hash(d));
  json broken = j;
  broken["blocks"][0][0] = 27;
  EXPECT_ANY_THROW(io::design_from_json(broken));
}

TEST(Io, HashIgnoresProvenance) {
  const Design d = construct_order2_unital();
  EXPECT_EQ(io::design_hash(d), io::design_hash(d.with_provenance({{"kind", "other"}})));
}

TEST(Io, GraphExports) {
  const Design d = testing_support::fano();
  const IsoGraph g(d, Flavor::incidence);
  const std::string dimacs = io::graph_dimacs(g);
  EXPECT_NE(dimacs.find("p bip 7 7 21\n"), std::string::npos);
  EXPECT_EQ(std::count(dimacs.begin(), dimacs.end(), '\n'), 23);
  EXPECT_EQ(io::graph_json(g)["edges"].size(), 21U);
}

TEST(Io, PlaneExport) {
  const ProjectivePlane pl(GaloisField::quadratic_over(2));
  const json j = io::plane_json(pl);
  EXPECT_EQ(j["points"].size(), 21U);
  EXPECT_EQ(j["lines"][0].size(), 5U);
}

TEST(Io, CertificateVerifiesAndDetectsTampering) {
  const Design d = construct_hermitian(3);
  const auto cert = construct_extremal_set(d, find_arc(d, 6).arc);
  const json j = json::parse(io::dump(io::certificate_json(d, cert)));
  EXPECT_TRUE(io::verify_certificate(j, d).ok());

  json tampered = j;
  tampered["witness"]["blocks"].erase(tampered["witness"]["blocks"].begin());
  EXPECT_FALSE(io::verify_certificate(tampered, d).ok());

  json wrong_claim = j;
  wrong_claim["claimed"] = io::fraction_json(Rational(1, 2));
  EXPECT_FALSE(io::verify_certificate(wrong_claim, d).ok());

  const auto other = io::verify_certificate(j, construct_bm(3, 4, 0));
  ASSERT_FALSE(other.ok());
  EXPECT_EQ(other.failures.front(), "design hash mismatch");
}
