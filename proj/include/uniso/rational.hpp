#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace uniso {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return make_rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
}

inline BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

/// Floor of a / b for b > 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline BigInt isqrt(const BigInt& a) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Decimal rendering rounded half away from zero to `digits` places.
/// Informational only; verdicts never use it.
inline std::string to_decimal(const Rational& r, int digits = 12) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  BigInt num = abs(r.get_num()) * scale * 2 + r.get_den();
  BigInt scaled = floor_div(num, BigInt(r.get_den() * 2));
  BigInt whole = floor_div(scaled, scale);
  BigInt frac = scaled - whole * scale;
  std::string fs = frac.get_str();
  fs.insert(0, static_cast<std::size_t>(digits) - fs.size(), '0');
  std::string out = (r < 0 ? "-" : "") + whole.get_str();
  if (digits > 0) out += "." + fs;
  return out;
}

}  // namespace uniso
