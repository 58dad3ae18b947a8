#include <gtest/gtest.h>

#include <set>

#include "uniso/finite_field.hpp"

using namespace uniso;

namespace {

// Schoolbook product of coefficient vectors reduced by the field modulus,
// written independently of the library's helpers.
std::uint32_t reference_mul(const GaloisField& f, std::uint32_t a, std::uint32_t b) {
  const std::uint32_t p = f.characteristic(), k = f.degree();
  auto ca = f.coefficients(a), cb = f.coefficients(b);
  std::vector<std::uint64_t> prod(2 * k, 0);
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % p;
  const auto& m = f.modulus();  // monic, degree k
  for (std::size_t d = 2 * k - 1; d >= k; --d) {
    const std::uint64_t lead = prod[d];
    if (lead == 0) continue;
    for (std::uint32_t i = 0; i <= k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - lead) * m[i]) % p;
  }
  std::vector<std::uint32_t> out(prod.begin(), prod.begin() + k);
  return f.index_of(out);
}

struct FieldCase {
  std::uint32_t p, k;
};

class FieldAxioms : public ::testing::TestWithParam<FieldCase> {};

}  // namespace

TEST_P(FieldAxioms, TablesAgreeWithPolynomialProduct) {
  const GaloisField f(GetParam().p, GetParam().k);
  for (std::uint32_t a = 0; a < f.order(); ++a)
    for (std::uint32_t b = 0; b < f.order(); ++b) {
      ASSERT_EQ(f.mul(a, b), reference_mul(f, a, b)) << a << "*" << b;
      ASSERT_EQ(f.mul(a, b), f.mul_poly(a, b));
    }
}

TEST_P(FieldAxioms, GroupLaws) {
  const GaloisField f(GetParam().p, GetParam().k);
  for (const auto a : f.elements()) {
    EXPECT_EQ(a + f.zero(), a);
    EXPECT_EQ(a * f.one(), a);
    EXPECT_EQ(a + (-a), f.zero());
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inverse(), f.one());
      EXPECT_EQ(a.pow(f.order() - 1), f.one());
    }
    for (const auto b : f.elements()) {
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a - b) + b, a);
      if (!b.is_zero()) {
        EXPECT_EQ((a / b) * b, a);
      }
    }
  }
}

TEST_P(FieldAxioms, PrimitiveElementGeneratesMultiplicativeGroup) {
  const GaloisField f(GetParam().p, GetParam().k);
  std::set<std::uint32_t> seen;
  FieldElement x = f.one();
  for (std::uint32_t i = 0; i + 1 < f.order(); ++i) {
    seen.insert(x.index());
    x = x * f.primitive();
  }
  EXPECT_EQ(seen.size(), f.order() - 1);
  EXPECT_EQ(seen.count(0), 0U);
}

TEST_P(FieldAxioms, Distributivity) {
  const GaloisField f(GetParam().p, GetParam().k);
  const auto els = f.elements();
  for (std::size_t i = 0; i < els.size(); i += 3)
    for (std::size_t j = 0; j < els.size(); j += 2)
      for (const auto c : els) ASSERT_EQ(els[i] * (els[j] + c), els[i] * els[j] + els[i] * c);
}

INSTANTIATE_TEST_SUITE_P(Small, FieldAxioms,
                         ::testing::Values(FieldCase{2, 1}, FieldCase{3, 1}, FieldCase{5, 1}, FieldCase{2, 2},
                                           FieldCase{3, 2}, FieldCase{2, 3}, FieldCase{2, 4}, FieldCase{5, 2},
                                           FieldCase{7, 2}, FieldCase{3, 3}));

TEST(FiniteField, ModulusChoice) {
  EXPECT_EQ(GaloisField(3, 2).modulus(), (std::vector<std::uint32_t>{1, 0, 1}));     // t^2 + 1
  EXPECT_EQ(GaloisField(2, 2).modulus(), (std::vector<std::uint32_t>{1, 1, 1}));     // t^2 + t + 1
  EXPECT_EQ(GaloisField(2, 4).modulus(), (std::vector<std::uint32_t>{1, 1, 0, 0, 1}));  // t^4 + t + 1
}

TEST(FiniteField, GF9SpotValues) {
  const GaloisField f(3, 2);
  const auto t = f.generator_t();
  EXPECT_EQ(t.index(), 3U);
  EXPECT_EQ(t * t, f.from_int(-1));  // t^2 = -1 = 2
  EXPECT_EQ((t * t).index(), 2U);
  // (1 + t)^2 = 1 + 2t + t^2 = 2t
  EXPECT_EQ((f.one() + t).pow(2), f.from_int(2) * t);
}

TEST(FiniteField, RejectsBadParameters) {
  EXPECT_THROW(GaloisField(4, 1), InvalidInput);
  EXPECT_THROW(GaloisField(2, 0), InvalidInput);
  EXPECT_THROW(GaloisField::quadratic_over(6), InvalidInput);
  EXPECT_THROW(GaloisField::quadratic_over(1), InvalidInput);
  const GaloisField f(3, 2), g(3, 2);
  EXPECT_THROW(f.zero() + g.one(), InvalidInput);
  EXPECT_THROW(f.zero().inverse(), InvalidInput);
  EXPECT_THROW(f.element(9), InvalidInput);
}

TEST(FiniteField, QuadraticExtensionOperations) {
  for (std::uint32_t q : {2U, 3U, 4U, 5U, 7U, 8U, 9U}) {
    auto f = GaloisField::quadratic_over(q);
    ASSERT_EQ(f->subfield_order(), q);
    std::uint32_t in_sub = 0;
    for (const auto a : f->elements()) {
      const auto fa = f->frobenius_q(a);
      EXPECT_EQ(f->frobenius_q(fa), a);
      const auto nrm = f->norm_to_subfield(a);
      EXPECT_TRUE(f->in_subfield(nrm));
      EXPECT_EQ(nrm, a * fa);
      in_sub += f->in_subfield(a);
    }
    EXPECT_EQ(in_sub, q);
  }
}

TEST(FiniteField, SubfieldSquaresAndTraces) {
  // Odd q: exactly (q-1)/2 nonzero squares in GF(q), counted by squaring.
  for (std::uint32_t q : {3U, 5U, 7U, 9U}) {
    auto f = GaloisField::quadratic_over(q);
    std::set<std::uint32_t> squares;
    for (const auto a : f->elements())
      if (f->in_subfield(a)) squares.insert((a * a).index());
    for (const auto a : f->elements()) {
      if (!f->in_subfield(a)) {
        EXPECT_THROW(f->subfield_is_square(a), InvalidInput);
        continue;
      }
      EXPECT_EQ(f->subfield_is_square(a), squares.count(a.index()) == 1) << "q=" << q << " a=" << a.index();
    }
  }
  // Even q: the trace to GF(2) is additive and hits 0 and 1 equally often.
  for (std::uint32_t q : {2U, 4U, 8U}) {
    auto f = GaloisField::quadratic_over(q);
    std::vector<FieldElement> sub;
    for (const auto a : f->elements())
      if (f->in_subfield(a)) sub.push_back(a);
    std::uint32_t zeros = 0;
    for (const auto a : sub) {
      zeros += f->subfield_abs_trace(a) == 0;
      for (const auto b : sub) EXPECT_EQ(f->subfield_abs_trace(a + b), f->subfield_abs_trace(a) ^ f->subfield_abs_trace(b));
    }
    EXPECT_EQ(zeros, q / 2);
    EXPECT_THROW(f->subfield_is_square(f->one()), InvalidInput);
  }
}
