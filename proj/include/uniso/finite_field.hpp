#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "uniso/errors.hpp"

namespace uniso {

class GaloisField;

/// Element of GF(p^k). The index is the coefficient vector of the polynomial
/// basis read as a little-endian base-p numeral; it is also the serialized form.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const GaloisField* field, std::uint32_t index) : field_(field), index_(index) {}

  std::uint32_t index() const { return index_; }
  const GaloisField* field() const { return field_; }
  bool is_zero() const { return index_ == 0; }

  friend FieldElement operator+(FieldElement a, FieldElement b);
  friend FieldElement operator-(FieldElement a, FieldElement b);
  friend FieldElement operator*(FieldElement a, FieldElement b);
  friend FieldElement operator/(FieldElement a, FieldElement b);
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;

  friend bool operator==(FieldElement a, FieldElement b) {
    return a.field_ == b.field_ && a.index_ == b.index_;
  }

 private:
  const GaloisField* field_ = nullptr;
  std::uint32_t index_ = 0;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

using Poly = std::vector<std::uint32_t>;  // little-endian coefficients mod p

inline void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic m over GF(p).
inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  poly_trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + static_cast<std::uint64_t>(p - lead) * m[i]) % p);
    }
    poly_trim(a);
  }
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  return out;
}

// Monic polynomial of degree d whose lower coefficients are the base-p digits of idx.
inline Poly monic_from_index(std::uint64_t idx, std::uint32_t d, std::uint32_t p) {
  Poly out(d + 1, 0);
  for (std::uint32_t i = 0; i < d; ++i) {
    out[i] = static_cast<std::uint32_t>(idx % p);
    idx /= p;
  }
  out[d] = 1;
  return out;
}

inline std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const auto deg = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
    const std::uint64_t count = ipow(p, d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      if (poly_mod(f, monic_from_index(idx, d, p), p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// GF(p^k) in a polynomial basis over the smallest monic irreducible modulus.
///
/// Candidate moduli are ordered by the base-p index of their non-leading
/// coefficients; the first irreducible one is used. Multiplication goes
/// through log/antilog tables when p^k <= 2^16, otherwise through polynomial
/// reduction. Immutable after construction.
class GaloisField {
 public:
  static constexpr std::uint64_t kTableLimit = 1u << 16;
  static constexpr std::uint64_t kMaxOrder = 1u << 24;

  GaloisField(std::uint32_t p, std::uint32_t k) : p_(p), k_(k) {
    if (!detail::is_prime(p)) throw InvalidInput("field characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) throw InvalidInput("extension degree must be positive");
    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      order *= p;
      if (order > kMaxOrder) throw InvalidInput("field order exceeds supported size");
    }
    order_ = static_cast<std::uint32_t>(order);
    choose_modulus();
    find_generator();
    if (order_ <= kTableLimit) build_tables();
  }

  /// GF(q^2) for a prime power q.
  static std::shared_ptr<const GaloisField> quadratic_over(std::uint64_t q) {
    auto [p, e] = factor_prime_power(q);
    return std::make_shared<const GaloisField>(p, 2 * e);
  }

  /// Splits q = p^e; throws if q is not a prime power.
  static std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint64_t q) {
    if (q < 2) throw InvalidInput(std::to_string(q) + " is not a prime power");
    auto primes = detail::prime_factors(q);
    if (primes.size() != 1) throw InvalidInput(std::to_string(q) + " is not a prime power");
    std::uint32_t e = 0;
    while (q > 1) {
      q /= primes[0];
      ++e;
    }
    return {static_cast<std::uint32_t>(primes[0]), e};
  }

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return k_; }
  std::uint32_t order() const { return order_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool has_tables() const { return !exp_.empty(); }

  FieldElement zero() const { return {this, 0}; }
  FieldElement one() const { return {this, 1}; }
  FieldElement element(std::uint32_t index) const {
    if (index >= order_) throw InvalidInput("field element index out of range");
    return {this, index};
  }
  /// Image of the integer n under Z -> GF(p).
  FieldElement from_int(std::int64_t n) const {
    const auto p = static_cast<std::int64_t>(p_);
    return {this, static_cast<std::uint32_t>(((n % p) + p) % p)};
  }
  /// The polynomial-basis variable t.
  FieldElement generator_t() const {
    if (k_ == 1) throw InvalidInput("prime field has no adjoined variable");
    return {this, p_};
  }
  FieldElement primitive() const { return {this, generator_}; }

  std::vector<FieldElement> elements() const {
    std::vector<FieldElement> out;
    out.reserve(order_);
    for (std::uint32_t i = 0; i < order_; ++i) out.emplace_back(this, i);
    return out;
  }

  std::vector<std::uint32_t> coefficients(std::uint32_t index) const {
    std::vector<std::uint32_t> c(k_);
    for (std::uint32_t i = 0; i < k_; ++i) {
      c[i] = index % p_;
      index /= p_;
    }
    return c;
  }

  std::uint32_t index_of(const std::vector<std::uint32_t>& coeffs) const {
    std::uint32_t idx = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) idx = idx * p_ + coeffs[i];
    return idx;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      out += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return out;
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (p_ == 2) return a;
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      out += ((p_ - a % p_) % p_) * scale;
      a /= p_;
      scale *= p_;
    }
    return out;
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (has_tables()) return exp_[log_[a] + log_[b]];
    return mul_poly(a, b);
  }

  /// Multiplication by explicit polynomial reduction; independent of the tables.
  std::uint32_t mul_poly(std::uint32_t a, std::uint32_t b) const {
    auto prod = detail::poly_mod(detail::poly_mul(coefficients(a), coefficients(b), p_), modulus_, p_);
    prod.resize(k_, 0);
    return index_of(prod);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (has_tables()) return exp_[static_cast<std::uint32_t>((static_cast<std::uint64_t>(log_[a]) * (e % (order_ - 1))) % (order_ - 1))];
    return pow_poly(a, e);
  }

  std::uint32_t pow_poly(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t result = 1, base = a;
    while (e) {
      if (e & 1) result = mul_poly(result, base);
      base = mul_poly(base, base);
      e >>= 1;
    }
    return result;
  }

  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw InvalidInput("inversion of zero");
    if (has_tables()) return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
    return pow_poly(a, order_ - 2);
  }

  // ---- quadratic-extension structure GF(q) < GF(q^2) ----

  bool is_quadratic_extension() const { return k_ % 2 == 0; }

  /// q, where this field is GF(q^2).
  std::uint32_t subfield_order() const {
    require_quadratic();
    return static_cast<std::uint32_t>(detail::ipow(p_, k_ / 2));
  }

  /// a -> a^q, the involutory automorphism fixing GF(q).
  FieldElement frobenius_q(FieldElement a) const {
    check_owner(a);
    return {this, pow(a.index(), subfield_order())};
  }

  bool in_subfield(FieldElement a) const { return frobenius_q(a) == a; }

  /// a -> a^(q+1), landing in GF(q).
  FieldElement norm_to_subfield(FieldElement a) const {
    check_owner(a);
    return {this, mul(a.index(), pow(a.index(), subfield_order()))};
  }

  /// Square test inside the subfield GF(q), q odd. Zero counts as a square.
  bool subfield_is_square(FieldElement a) const {
    check_owner(a);
    const std::uint32_t q = subfield_order();
    if (p_ == 2) throw InvalidInput("square test requires odd characteristic");
    if (!in_subfield(a)) throw InvalidInput("element is not in the subfield GF(q)");
    return a.is_zero() || pow(a.index(), (q - 1) / 2) == 1;
  }

  /// Absolute trace GF(q) -> GF(2) of a subfield element, q = 2^e.
  std::uint32_t subfield_abs_trace(FieldElement a) const {
    check_owner(a);
    const std::uint32_t e = k_ / 2;
    require_quadratic();
    if (p_ != 2) throw InvalidInput("absolute trace to GF(2) requires characteristic 2");
    if (!in_subfield(a)) throw InvalidInput("element is not in the subfield GF(q)");
    return trace_power_sum(a.index(), e);
  }

  /// Square test in the whole field, odd order. Zero counts as a square.
  bool is_square(FieldElement a) const {
    check_owner(a);
    if (p_ == 2) throw InvalidInput("square test requires odd characteristic");
    return a.is_zero() || pow(a.index(), (order_ - 1) / 2) == 1;
  }

  /// Absolute trace GF(2^k) -> GF(2).
  std::uint32_t abs_trace(FieldElement a) const {
    check_owner(a);
    if (p_ != 2) throw InvalidInput("absolute trace to GF(2) requires characteristic 2");
    return trace_power_sum(a.index(), k_);
  }

  void check_owner(FieldElement a) const {
    if (a.field() != this) throw InvalidInput("field element belongs to a different field");
  }

 private:
  std::uint32_t trace_power_sum(std::uint32_t a, std::uint32_t terms) const {
    std::uint32_t acc = 0, term = a;
    for (std::uint32_t i = 0; i < terms; ++i) {
      acc = add(acc, term);
      term = mul(term, term);
    }
    if (acc > 1) throw VerificationFailure("trace left the prime field");
    return acc;
  }

  void require_quadratic() const {
    if (!is_quadratic_extension()) throw InvalidInput("field is not a quadratic extension GF(q^2)");
  }

  void choose_modulus() {
    const std::uint64_t count = detail::ipow(p_, k_);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      auto f = detail::monic_from_index(idx, k_, p_);
      if (detail::is_irreducible(f, p_)) {
        modulus_ = std::move(f);
        return;
      }
    }
    throw VerificationFailure("no irreducible polynomial found");
  }

  void find_generator() {
    const std::uint64_t group = order_ - 1;
    if (group == 1) {
      generator_ = 1;
      return;
    }
    const auto primes = detail::prime_factors(group);
    for (std::uint32_t g = 2; g < order_; ++g) {
      bool primitive = pow_poly(g, group) == 1;
      for (auto l : primes) {
        if (!primitive) break;
        primitive = pow_poly(g, group / l) != 1;
      }
      if (primitive) {
        generator_ = g;
        return;
      }
    }
    throw VerificationFailure("multiplicative group has no generator; modulus is not irreducible");
  }

  void build_tables() {
    const std::uint32_t group = order_ - 1;
    exp_.assign(2 * static_cast<std::size_t>(group) + 1, 0);
    log_.assign(order_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < group; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = mul_poly(x, generator_);
    }
    if (x != 1) throw VerificationFailure("generator order mismatch");
    for (std::uint32_t i = group; i < exp_.size(); ++i) exp_[i] = exp_[i - group];
  }

  std::uint32_t p_;
  std::uint32_t k_;
  std::uint32_t order_ = 0;
  std::uint32_t generator_ = 1;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

namespace detail {
inline const GaloisField& common_field(FieldElement a, FieldElement b) {
  if (a.field() == nullptr || a.field() != b.field()) throw InvalidInput("field elements from different fields");
  return *a.field();
}
inline const GaloisField& owner(FieldElement a) {
  if (a.field() == nullptr) throw InvalidInput("uninitialized field element");
  return *a.field();
}
}  // namespace detail

inline FieldElement operator+(FieldElement a, FieldElement b) {
  const auto& f = detail::common_field(a, b);
  return {&f, f.add(a.index(), b.index())};
}
inline FieldElement operator-(FieldElement a, FieldElement b) {
  const auto& f = detail::common_field(a, b);
  return {&f, f.add(a.index(), f.neg(b.index()))};
}
inline FieldElement operator*(FieldElement a, FieldElement b) {
  const auto& f = detail::common_field(a, b);
  return {&f, f.mul(a.index(), b.index())};
}
inline FieldElement operator/(FieldElement a, FieldElement b) {
  const auto& f = detail::common_field(a, b);
  return {&f, f.mul(a.index(), f.inv(b.index()))};
}
inline FieldElement FieldElement::operator-() const {
  const auto& f = detail::owner(*this);
  return {&f, f.neg(index_)};
}
inline FieldElement FieldElement::inverse() const {
  const auto& f = detail::owner(*this);
  return {&f, f.inv(index_)};
}
inline FieldElement FieldElement::pow(std::uint64_t e) const {
  const auto& f = detail::owner(*this);
  return {&f, f.pow(index_, e)};
}

}  // namespace uniso
