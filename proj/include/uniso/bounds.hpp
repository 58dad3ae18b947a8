#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "uniso/arcs.hpp"
#include "uniso/design.hpp"
#include "uniso/errors.hpp"
#include "uniso/iso_graph.hpp"
#include "uniso/parallel.hpp"
#include "uniso/rational.hpp"

namespace uniso {

// Unital formulas. Every quantity is an exact rational or a big integer; the
// irrational c(n) = n^2 + 3/2 - sqrt(8n^2+9)/2 is only ever compared exactly.

namespace detail {

inline BigInt bn(std::uint64_t n) { return BigInt(std::to_string(n)); }

inline void require_order(std::uint64_t n) {
  if (n < 2) throw InvalidInput("unital order n must be at least 2");
}

// n^2 (n^2 + 1) / 2
inline BigInt half_vertices(const BigInt& n) { return n * n * (n * n + 1) / 2; }

// 2 g(z) = 2(n^2+1) z - z(z-1)
inline BigInt twice_g(const BigInt& n, const BigInt& z) { return 2 * (n * n + 1) * z - z * (z - 1); }

inline int rsign(const Rational& r) { return ::sgn(r); }

/// Sign of a + b sqrt(d), d >= 0.
inline int surd_sign(const Rational& a, const Rational& b, const BigInt& d) {
  const int sa = rsign(a);
  const int sb = d == 0 ? 0 : rsign(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const Rational a2 = a * a, b2d = b * b * Rational(d);
  if (a2 > b2d) return sa;
  if (a2 < b2d) return sb;
  return 0;
}

}  // namespace detail

/// c(n) held as a + b sqrt(d).
struct CValue {
  Rational a;
  Rational b;
  BigInt d;

  explicit CValue(std::uint64_t n) {
    const BigInt bn = detail::bn(n);
    a = Rational(bn * bn) + Rational(3, 2);
    b = Rational(-1, 2);
    d = 8 * bn * bn + 9;
  }

  /// Sign of t - c(n).
  int compare(const Rational& t) const { return detail::surd_sign(t - a, -b, d); }
};

/// g(z) = (n^2+1) z - z(z-1)/2 on 0 <= z <= n^2+1.
inline Rational g_of(std::uint64_t n, std::uint64_t z) {
  detail::require_order(n);
  const BigInt N = detail::bn(n);
  if (BigInt(detail::bn(z)) > N * N + 1) throw InvalidInput("g(z) needs 0 <= z <= n^2+1");
  return make_rational(detail::twice_g(N, detail::bn(z)), BigInt(2));
}

/// Largest integer z with g(z) <= n^2(n^2+1)/2, by bisection on g.
inline BigInt floor_c_by_g(std::uint64_t n) {
  detail::require_order(n);
  const BigInt N = detail::bn(n);
  const BigInt target = 2 * detail::half_vertices(N);
  BigInt lo = 0, hi = N * N + 1;  // g(lo) <= T < g(hi)
  while (hi - lo > 1) {
    const BigInt mid = (lo + hi) / 2;
    if (detail::twice_g(N, mid) <= target) lo = mid;
    else hi = mid;
  }
  return lo;
}

/// floor(n^2 - (sqrt(8n^2+9) - 3)/2) via the integer square root.
inline BigInt floor_c_by_sqrt(std::uint64_t n) {
  detail::require_order(n);
  const BigInt N = detail::bn(n);
  const BigInt d = 8 * N * N + 9;
  const BigInt t = isqrt(d);
  // ceil((sqrt(d) - 3)/2). A square d is odd, so is its root. Otherwise
  // sqrt(d) lies in (t, t+1) and the ceiling is floor((t-1)/2).
  const BigInt up = t * t == d ? BigInt((t - 3) / 2) : floor_div(t - 1, BigInt(2));
  return N * N - up;
}

/// floor(c(n)), from the g characterization, cross-checked against the square root.
inline std::uint64_t floor_c(std::uint64_t n) {
  const BigInt a = floor_c_by_g(n), b = floor_c_by_sqrt(n);
  if (a != b) {
    throw VerificationFailure("floor_c disagreement at n=" + std::to_string(n) + ": " + a.get_str() + " vs " +
                              b.get_str());
  }
  return a.get_ui();
}

struct BoundReport {
  std::uint64_t n = 0;
  std::uint64_t floor_c = 0;
  Rational lower;
  Rational upper;
  std::uint64_t m_used = 0;
  bool pinch = false;
};

/// Lower 2(n^3+1-floor c)/(n^2(n^2+1)); upper with min(m_arc, floor c) in place of floor c.
inline BoundReport theorem1_bounds(std::uint64_t n, std::uint64_t m_arc) {
  detail::require_order(n);
  if (m_arc < 3) throw InvalidInput("theorem1_bounds needs a certified arc size >= 3");
  const BigInt N = detail::bn(n);
  BoundReport rep;
  rep.n = n;
  rep.floor_c = floor_c(n);
  rep.m_used = m_arc;
  const BigInt half = detail::half_vertices(N);
  const BigInt top = N * N * N + 1;
  rep.lower = make_rational(top - detail::bn(rep.floor_c), half);
  rep.upper = make_rational(top - detail::bn(std::min(m_arc, rep.floor_c)), half);
  rep.pinch = rep.lower == rep.upper;
  return rep;
}

/// Isoperimetric number of the non-incidence graph: 4/5 at n = 2, else 2(n^3+1)/(n^2(n^2+1)).
inline Rational theorem2_value(std::uint64_t n) {
  detail::require_order(n);
  if (n == 2) return Rational(4, 5);
  const BigInt N = detail::bn(n);
  return make_rational(N * N * N + 1, detail::half_vertices(N));
}

/// n^3 + 1 - (n^2(n^2+1)/2) iso.
inline Rational corollary4_m_bound(std::uint64_t n, const Rational& iso) {
  detail::require_order(n);
  const BigInt N = detail::bn(n);
  if (iso <= 0 || iso > Rational(N * N)) throw InvalidInput("iso value must lie in (0, n^2]");
  return Rational(N * N * N + 1) - Rational(detail::half_vertices(N)) * iso;
}

/// Witness S = X u Y for the upper bound, with its verification trace.
struct Certificate {
  nlohmann::json design_provenance;
  std::uint64_t n = 0;
  std::vector<std::uint32_t> arc;     // the arc A the construction started from
  std::vector<std::uint32_t> points;  // X
  std::vector<std::uint32_t> blocks;  // Y
  Rational claimed;

  struct Checks {
    std::uint64_t x = 0;
    std::uint64_t n_x = 0;        // |N(X)|
    std::uint64_t g_minus_x = 0;  // g(x) - x
    std::uint64_t padding = 0;    // blocks added beyond N(X)
    std::uint64_t s = 0;          // |S|
    std::uint64_t n_s = 0;        // |N(S)|
    std::uint64_t n_s_cap = 0;    // n^3 + 1 - x
    bool arc_ok = false;
    bool within_half = false;
    BoundReport bounds;
  } checks;
};

/// Takes the first min(|A|, floor c) points X of the arc A, checks |N(X)| =
/// g(x) - x, pads N(X) with the lowest-id blocks to Y of size
/// n^2(n^2+1)/2 - x, and measures S = X u Y. When x = floor c the measured
/// ratio must equal the lower bound.
inline Certificate construct_extremal_set(const Design& d, std::vector<std::uint32_t> arc) {
  const auto order = d.unital_order();
  if (!order) throw InvalidInput("design is not a unital");
  const std::uint64_t n = *order;
  std::sort(arc.begin(), arc.end());
  if (arc.empty()) throw InvalidInput("arc is empty");
  if (std::adjacent_find(arc.begin(), arc.end()) != arc.end()) throw InvalidInput("arc has repeated points");
  if (arc.back() >= d.v()) throw InvalidInput("arc point out of range");
  if (!is_arc(d, arc)) throw InvalidInput("point set is not an arc");

  Certificate cert;
  cert.design_provenance = d.provenance();
  cert.n = n;
  cert.arc = arc;
  auto& ck = cert.checks;
  ck.arc_ok = true;
  const std::uint64_t fc = floor_c(n);
  ck.x = std::min<std::uint64_t>(arc.size(), fc);
  cert.points.assign(arc.begin(), arc.begin() + static_cast<std::ptrdiff_t>(ck.x));

  const IsoGraph g(d, Flavor::incidence);
  VertexSubset s = VertexSubset::empty_for(g);
  for (auto p : cert.points) s.points.set(p);
  const Bitset nx = point_neighborhood(g, s.points);
  ck.n_x = nx.count();
  const Rational gx = g_of(n, ck.x);
  ck.g_minus_x = Rational(gx - Rational(detail::bn(ck.x))).get_num().get_ui();
  if (ck.n_x != ck.g_minus_x) {
    throw VerificationFailure("|N(X)| = " + std::to_string(ck.n_x) + " but g(x) - x = " + std::to_string(ck.g_minus_x));
  }
  const std::uint64_t half = detail::half_vertices(detail::bn(n)).get_ui();
  const std::uint64_t y_size = half - ck.x;
  if (ck.n_x > y_size) throw VerificationFailure("N(X) does not fit in the block part");

  s.blocks = nx;
  for (std::uint32_t j = 0; j < g.b() && s.blocks.count() < y_size; ++j) {
    if (!s.blocks.test(j)) {
      s.blocks.set(j);
      ++ck.padding;
    }
  }
  cert.blocks = s.blocks.indices();
  ck.s = s.size();
  ck.within_half = within_half(g, ck.s);
  const VertexSubset ns = neighborhood(g, s);
  ck.n_s = ns.size();
  ck.n_s_cap = n * n * n + 1 - ck.x;
  cert.claimed = iso_ratio(g, s);

  if (ck.n_s > ck.n_s_cap) {
    throw VerificationFailure("|N(S)| = " + std::to_string(ck.n_s) + " exceeds n^3+1-x = " + std::to_string(ck.n_s_cap));
  }
  ck.bounds = theorem1_bounds(n, std::max<std::uint64_t>(3, arc.size()));
  if (cert.claimed < ck.bounds.lower) {
    throw VerificationFailure("extremal set ratio " + to_string(cert.claimed) + " is below the lower bound " +
                              to_string(ck.bounds.lower));
  }
  if (ck.x == fc && cert.claimed != ck.bounds.lower) {
    throw VerificationFailure("pinch failed: ratio " + to_string(cert.claimed) + " != " + to_string(ck.bounds.lower));
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Numeric audit of the lower-bound argument, over integer x and y only.

struct AuditCheck {
  std::string name;
  bool passed = true;
  std::uint64_t points_checked = 0;
  std::string witness;  // first failing point, if any

  explicit AuditCheck(std::string n = {}) : name(std::move(n)) {}
};

struct AuditReport {
  std::uint64_t n = 0;
  bool sampled = false;
  std::string scope = "integer x, y only";
  std::vector<AuditCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.passed; });
  }
};

struct AuditOptions {
  /// Exhaustive integer grids up to this n, stratified samples above.
  std::uint64_t exhaustive_limit = 12;
  std::uint64_t samples_per_stripe = 256;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// f(x,y) = (4x/(n+1)^2)(n^3+1) + (1 - 4x/(n+1)^2) n^2(n+1)y/(n^2(n-1)+y) - x.
inline Rational audit_f(std::uint64_t n, const Rational& x, const Rational& y) {
  const BigInt N = detail::bn(n);
  const Rational w = Rational(4) * x / Rational((N + 1) * (N + 1));
  const Rational tail = Rational(N * N * (N + 1)) * y / (Rational(N * N * (N - 1)) + y);
  return w * Rational(N * N * N + 1) + (Rational(1) - w) * tail - x;
}

/// h(z) = z - (1 - (n+1)^2/(4z)) (n^4 z/(n^2-1+z) + z - (n^4+n^2)/2).
inline Rational audit_h(std::uint64_t n, const Rational& z) {
  const BigInt N = detail::bn(n);
  const BigInt n2 = N * N, n4 = n2 * n2;
  const Rational lead = Rational(1) - Rational((N + 1) * (N + 1)) / (Rational(4) * z);
  const Rational yp = Rational(n4) * z / (Rational(n2 - 1) + z) + z - make_rational(n4 + n2, BigInt(2));
  return z - lead * yp;
}

namespace detail {

// Integer points of [lo, hi]: all of them, or the endpoints plus seeded draws.
inline std::vector<std::uint64_t> audit_points(std::uint64_t lo, std::uint64_t hi, bool sampled, std::uint64_t samples,
                                               std::uint64_t seed) {
  std::vector<std::uint64_t> out;
  if (lo > hi) return out;
  if (!sampled || hi - lo + 1 <= samples + 2) {
    for (std::uint64_t z = lo; z <= hi; ++z) out.push_back(z);
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(lo, hi);
  out = {lo, hi};
  for (std::uint64_t i = 0; i < samples; ++i) out.push_back(dist(rng));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::string pt(const char* a, std::uint64_t x) { return std::string(a) + "=" + std::to_string(x); }

}  // namespace detail

/// Checks the inequalities that the lower-bound argument rests on, exactly:
/// the Case-1 grid, the Case-2 coefficient and constant, h(n^2) <= c(n), h
/// nonincreasing on [n^2, n^3+1], and the Case-4 slope chain.
inline AuditReport audit_lowerbound_machinery(std::uint64_t n, const AuditOptions& opts = {}) {
  if (n < 3) throw InvalidInput("audit needs n >= 3");
  AuditReport rep;
  rep.n = n;
  rep.sampled = n > opts.exhaustive_limit;
  const BigInt N = detail::bn(n);
  const BigInt n2 = N * N;
  const BigInt half = detail::half_vertices(N);
  const std::uint64_t fc = floor_c(n);
  const Rational target = make_rational(N * N * N + 1 - detail::bn(fc), half);
  const CValue c(n);

  // (i) Case 1.
  {
    AuditCheck ck{"case1_grid"};
    const std::uint64_t xmax = floor_div((N + 1) * (N + 1), BigInt(4)).get_ui();
    const std::uint64_t ymax = floor_div(n2 * n2 - n2 * N + n2, BigInt(2)).get_ui();
    const auto ys = detail::audit_points(0, ymax, rep.sampled, opts.samples_per_stripe, opts.seed);
    std::vector<AuditCheck> stripes(xmax + 1);
    detail::run_tasks(xmax + 1, opts.threads, [&](std::size_t xi) {
      AuditCheck& st = stripes[xi];
      const Rational x(detail::bn(xi));
      for (const auto y : ys) {
        if (xi + y == 0) continue;
        ++st.points_checked;
        const Rational yr(detail::bn(y));
        if (audit_f(n, x, yr) / (x + yr) < target) {
          if (st.passed) st.witness = detail::pt("x", xi) + ", " + detail::pt("y", y);
          st.passed = false;
          return;
        }
      }
    });
    for (const auto& st : stripes) {
      ck.points_checked += st.points_checked;
      if (!st.passed && ck.passed) {
        ck.passed = false;
        ck.witness = st.witness;
      }
    }
    rep.checks.push_back(std::move(ck));
  }

  // (ii) Case 2: positive coefficient and n^2(n^3+1)/(n^2+n-1) >= n^3+1-floor c.
  {
    AuditCheck ck{"case2_coefficient"};
    const BigInt n3p1 = N * N * N + 1;
    const Rational coef = make_rational(4 * n3p1 * (N - 1), (N + 1) * (N + 1) * (n2 + N - 1)) - 1;
    const Rational constant = make_rational(n2 * n3p1, n2 + N - 1);
    ck.points_checked = 2;
    if (!(coef > 0)) {
      ck.passed = false;
      ck.witness = "coefficient " + to_string(coef);
    } else if (constant < Rational(n3p1 - detail::bn(fc))) {
      ck.passed = false;
      ck.witness = "constant " + to_string(constant);
    }
    // f(x, y0) is linear in x with that coefficient and constant.
    const Rational y0 = make_rational(n2 * n2 - n2 * N + n2, BigInt(2));
    if (ck.passed && audit_f(n, Rational(0), y0) != constant) {
      ck.passed = false;
      ck.witness = "f(0, y0) = " + to_string(audit_f(n, Rational(0), y0));
    }
    if (ck.passed && audit_f(n, Rational(1), y0) - audit_f(n, Rational(0), y0) != coef) {
      ck.passed = false;
      ck.witness = "slope of f(., y0)";
    }
    rep.checks.push_back(std::move(ck));
  }

  // (iii) h(n^2) <= c(n), and the closed form of h(n^2).
  {
    AuditCheck ck{"h_at_n2"};
    const Rational h = audit_h(n, Rational(n2));
    const Rational closed =
        Rational(n2) - make_rational((3 * n2 - 1) * (3 * N + 1) * (N - 1), 8 * (2 * n2 - 1));
    ck.points_checked = 1;
    if (h != closed) {
      ck.passed = false;
      ck.witness = "h(n^2) = " + to_string(h) + " != closed form " + to_string(closed);
    } else if (c.compare(h) > 0) {
      ck.passed = false;
      ck.witness = "h(n^2) = " + to_string(h) + " > c(n)";
    }
    rep.checks.push_back(std::move(ck));
  }

  // (iv) h(z+1) <= h(z) for integers n^2 <= z < n^3+1.
  {
    AuditCheck ck{"h_nonincreasing"};
    const std::uint64_t lo = n * n, hi = n * n * n + 1;
    const auto zs = detail::audit_points(lo, hi - 1, rep.sampled, opts.samples_per_stripe, opts.seed + 1);
    for (const auto z : zs) {
      ++ck.points_checked;
      if (audit_h(n, Rational(detail::bn(z + 1))) > audit_h(n, Rational(detail::bn(z)))) {
        ck.passed = false;
        ck.witness = detail::pt("z", z);
        break;
      }
    }
    rep.checks.push_back(std::move(ck));
  }

  // (v) Case 4, for integers c(n) < x <= n^2.
  {
    AuditCheck ck{"case4_slope_chain"};
    const Rational T(half);
    const Rational gn2 = g_of(n, n * n);
    auto fail = [&](std::string w) {
      if (ck.passed) ck.witness = std::move(w);
      ck.passed = false;
    };
    // g(c) = T, so the chord from c to n^2 has slope n^2/(n^2 - c).
    if (gn2 - T != Rational(n2)) fail("g(n^2) - T != n^2");
    // c(n) >= n(n+1)/2 and c(n) >= (n+1)^2/4.
    if (c.compare(make_rational(N * (N + 1), BigInt(2))) > 0) fail("c(n) < n(n+1)/2");
    if (c.compare(make_rational((N + 1) * (N + 1), BigInt(4))) > 0) fail("c(n) < (n+1)^2/4");
    // Integer concavity between floor c and n^2.
    const Rational gfc = g_of(n, fc);
    const Rational chord = (gn2 - gfc) / Rational(n2 - detail::bn(fc));
    const auto xs = detail::audit_points(fc + 1, n * n, rep.sampled, opts.samples_per_stripe, opts.seed + 2);
    for (const auto xi : xs) {
      ++ck.points_checked;
      const Rational x(detail::bn(xi));
      const Rational gx = g_of(n, xi);
      if (xi < n * n && (gx - gfc) / (x - Rational(detail::bn(fc))) < chord) {
        fail("concavity at " + detail::pt("x", xi));
        break;
      }
      if (c.compare(x) <= 0) continue;  // x <= c(n) belongs to Case 3
      // (g(x) - T)(n^2 - c) >= (g(n^2) - T)(x - c), as a + b sqrt(d) >= 0.
      const Rational u = gx - T, w = gn2 - T;
      const Rational a = u * (Rational(n2) - c.a) - w * (x - c.a);
      const Rational b = (w - u) * c.b;
      if (detail::surd_sign(a, b, c.d) < 0) {
        fail("slope at " + detail::pt("x", xi));
        break;
      }
      // x - (1 - (n+1)^2/(4x)) (g(x) - T) <= c(n).
      const Rational lhs = x - (Rational(1) - Rational((N + 1) * (N + 1)) / (Rational(4) * x)) * u;
      if (c.compare(lhs) > 0) {
        fail("cond2 at " + detail::pt("x", xi));
        break;
      }
    }
    rep.checks.push_back(std::move(ck));
  }
  return rep;
}

}  // namespace uniso
