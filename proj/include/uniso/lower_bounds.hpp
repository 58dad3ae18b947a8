#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "uniso/design.hpp"
#include "uniso/errors.hpp"
#include "uniso/iso_graph.hpp"
#include "uniso/rational.hpp"

namespace uniso {

// Lower bounds on neighborhood sizes in the incidence graph of a 2-design.
// Inputs are cardinalities; results are exact.

/// |N(X)| >= x (2rm - lambda(x-1)) / (m(m+1)) for any positive integer m.
/// Negative for large x; returned as is.
inline Rational lb_main1(const DesignParams& p, std::uint64_t x, std::uint64_t m) {
  if (m < 1) throw InvalidInput("lb_main1 needs m >= 1");
  if (x > p.v) throw InvalidInput("x exceeds v");
  const BigInt bx = big(static_cast<std::int64_t>(x)), bm = big(static_cast<std::int64_t>(m));
  const BigInt num = bx * (2 * big(static_cast<std::int64_t>(p.r)) * bm - big(static_cast<std::int64_t>(p.lambda)) * (bx - 1));
  return make_rational(num, bm * (bm + 1));
}

/// |N(X)| >= r^2 x / (r + lambda(x-1)).
inline Rational lb_main2(const DesignParams& p, std::uint64_t x) {
  if (x > p.v) throw InvalidInput("x exceeds v");
  if (x == 0) return Rational(0);
  const BigInt r = big(static_cast<std::int64_t>(p.r)), bx = big(static_cast<std::int64_t>(x));
  return make_rational(r * r * bx, r + big(static_cast<std::int64_t>(p.lambda)) * (bx - 1));
}

/// |N(Y)| >= rk y / (r^2 - lambda(b-y)); 0 when the denominator is not positive.
inline Rational lb_main3(const DesignParams& p, std::uint64_t y) {
  if (y > p.b) throw InvalidInput("y exceeds b");
  const BigInt r = big(static_cast<std::int64_t>(p.r));
  const BigInt den = r * r - big(static_cast<std::int64_t>(p.lambda)) * big(static_cast<std::int64_t>(p.b - y));
  if (den <= 0 || y == 0) return Rational(0);
  return make_rational(r * big(static_cast<std::int64_t>(p.k)) * big(static_cast<std::int64_t>(y)), den);
}

/// |N(X) \ Y| >= (4 lambda / k^2) x (v - x - x'), where v - x - x' = |P \ (X u N(Y))|.
inline Rational lb_main4(const DesignParams& p, std::uint64_t x, std::uint64_t x_prime) {
  if (x + x_prime > p.v) throw InvalidInput("x + x' exceeds v");
  const BigInt k = big(static_cast<std::int64_t>(p.k));
  return make_rational(4 * big(static_cast<std::int64_t>(p.lambda)) * big(static_cast<std::int64_t>(x)) *
                           big(static_cast<std::int64_t>(p.v - x - x_prime)),
                       k * k);
}

/// Outcome of checking all four neighborhood bounds on one (X, Y) pair.
struct Theorem3Report {
  Profile profile;
  std::uint64_t n_x = 0;          // |N(X)|
  std::uint64_t n_y = 0;          // |N(Y)|
  std::uint64_t n_x_minus_y = 0;  // |N(X) \ Y|
  /// m values for which every block of N(X) meets X in m or m+1 points.
  std::vector<std::uint64_t> equality_ms;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Evaluates the bounds on the true neighborhoods of X and Y, together with
/// the profile forms y+y' and x+x'. When every block of N(X) meets X in m or
/// m+1 points, the first bound must hold with equality.
inline Theorem3Report check_theorem3(const IsoGraph& g, const Bitset& x_set, const Bitset& y_set,
                                     const std::vector<std::uint64_t>& m_values) {
  if (g.flavor() != Flavor::incidence) throw InvalidInput("check_theorem3 needs an incidence graph");
  if (x_set.size() != g.v() || y_set.size() != g.b()) throw InvalidInput("subset does not match graph sides");
  const DesignParams& p = g.params();
  Theorem3Report rep;
  const Bitset nx = point_neighborhood(g, x_set);
  const Bitset ny = block_neighborhood(g, y_set);
  rep.n_x = nx.count();
  rep.n_y = ny.count();
  rep.n_x_minus_y = (nx - y_set).count();
  rep.profile = {x_set.count(), y_set.count(), (ny - x_set).count(), rep.n_x_minus_y};
  const auto& pr = rep.profile;

  auto expect = [&](const char* what, std::uint64_t actual, const Rational& bound) {
    if (Rational(static_cast<unsigned long>(actual)) < bound) {
      rep.violations.push_back(std::string(what) + ": " + std::to_string(actual) + " < " + to_string(bound));
    }
  };

  // Intersection sizes |B n X| for B in N(X).
  std::vector<std::uint64_t> meets;
  nx.for_each([&](std::uint32_t j) { meets.push_back(g.block_adjacency(j).intersection_count(x_set)); });

  for (const std::uint64_t m : m_values) {
    const Rational b1 = lb_main1(p, pr.x, m);
    expect("main1 |N(X)|", rep.n_x, b1);
    expect("main1 y+y'", pr.y + pr.y_prime, b1);
    const bool equality = std::all_of(meets.begin(), meets.end(), [&](std::uint64_t c) { return c == m || c == m + 1; });
    if (equality) {
      rep.equality_ms.push_back(m);
      if (Rational(static_cast<unsigned long>(rep.n_x)) != b1) {
        rep.violations.push_back("main1 equality for m=" + std::to_string(m) + ": |N(X)| = " + std::to_string(rep.n_x) +
                                 " != " + to_string(b1));
      }
    }
  }
  const Rational b2 = lb_main2(p, pr.x);
  expect("main2 |N(X)|", rep.n_x, b2);
  expect("main2 y+y'", pr.y + pr.y_prime, b2);
  const Rational b3 = lb_main3(p, pr.y);
  expect("main3 |N(Y)|", rep.n_y, b3);
  expect("main3 x+x'", pr.x + pr.x_prime, b3);
  const Rational b4 = lb_main4(p, pr.x, pr.x_prime);
  expect("main4 |N(X)\\Y|", rep.n_x_minus_y, b4);
  return rep;
}

}  // namespace uniso
