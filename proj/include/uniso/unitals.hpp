#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "uniso/design.hpp"
#include "uniso/errors.hpp"
#include "uniso/finite_field.hpp"
#include "uniso/projective_plane.hpp"

namespace uniso {

/// How the ambient lines of PG(2, q^2) meet an embedded point set.
struct SecantStats {
  std::uint64_t tangent_lines = 0;  // lines meeting the set in one point
  std::uint64_t secant_lines = 0;   // lines meeting the set in q + 1 points
};

namespace detail {

inline nlohmann::json field_json(const GaloisField& f) {
  return {{"p", f.characteristic()}, {"k", f.degree()}, {"modulus", f.modulus()}};
}

// Derives blocks from the ambient lines meeting `ambient` in at least two
// points, renumbering the set 0..v-1 by increasing ambient id. Every line must
// meet the set in exactly 1 or q+1 points.
inline Design embedded_unital(const ProjectivePlane& plane, std::vector<ProjPoint> ambient, std::uint32_t q,
                              nlohmann::json provenance, SecantStats* stats) {
  std::sort(ambient.begin(), ambient.end());
  if (std::adjacent_find(ambient.begin(), ambient.end()) != ambient.end()) {
    throw VerificationFailure("duplicate points in the unital point set");
  }
  const std::uint64_t expected = static_cast<std::uint64_t>(q) * q * q + 1;
  if (ambient.size() != expected) {
    throw VerificationFailure("point set has " + std::to_string(ambient.size()) + " points, expected " +
                              std::to_string(expected));
  }
  std::vector<std::int64_t> local(plane.num_points(), -1);
  for (std::uint32_t i = 0; i < ambient.size(); ++i) local[ambient[i].id] = i;

  SecantStats s;
  std::vector<Block> blocks;
  for (const ProjLine line : plane.lines()) {
    Block blk;
    for (const ProjPoint p : plane.points_on_line(line))
      if (local[p.id] >= 0) blk.push_back(static_cast<std::uint32_t>(local[p.id]));
    if (blk.size() == 1) {
      ++s.tangent_lines;
    } else if (blk.size() == q + 1) {
      ++s.secant_lines;
      blocks.push_back(std::move(blk));
    } else {
      throw VerificationFailure("ambient line " + std::to_string(line.id) + " meets the point set in " +
                                std::to_string(blk.size()) + " points; expected 1 or " + std::to_string(q + 1));
    }
  }
  nlohmann::json coords = nlohmann::json::array();
  for (const ProjPoint p : ambient) coords.push_back(plane.index_triple(p.id));
  provenance["field"] = field_json(plane.field());
  provenance["points"] = std::move(coords);
  Design d(static_cast<std::uint32_t>(ambient.size()), std::move(blocks), std::move(provenance));
  if (!(d.params() == DesignParams::unital(q))) {
    throw VerificationFailure("embedded design has parameters " + d.params().to_string() + ", expected " +
                              DesignParams::unital(q).to_string());
  }
  if (stats) *stats = s;
  return d;
}

}  // namespace detail

/// Points of the Hermitian curve x0^(q+1) + x1^(q+1) + x2^(q+1) = 0 in PG(2, q^2).
inline std::vector<ProjPoint> hermitian_points(const ProjectivePlane& plane) {
  const GaloisField& f = plane.field();
  std::vector<ProjPoint> out;
  for (const ProjPoint p : plane.points()) {
    const Triple x = plane.coordinates(p);
    if ((f.norm_to_subfield(x[0]) + f.norm_to_subfield(x[1]) + f.norm_to_subfield(x[2])).is_zero()) out.push_back(p);
  }
  return out;
}

/// The classical unital H(q) on the Hermitian curve of PG(2, q^2), q > 2.
inline Design construct_hermitian(std::uint32_t q, SecantStats* stats = nullptr) {
  if (q <= 2) throw InvalidInput("hermitian unital needs q > 2");
  auto field = GaloisField::quadratic_over(q);
  ProjectivePlane plane(field);
  auto pts = hermitian_points(plane);
  return detail::embedded_unital(plane, std::move(pts), q, {{"kind", "hermitian"}, {"q", q}}, stats);
}

/// Outcome of the parabolic Buekenhout-Metz admissibility test.
struct BmAdmissibility {
  bool admissible = false;
  std::string failed_condition;  // empty when admissible
};

/// Odd q: (beta^q - beta)^2 + 4 alpha^(q+1) must be a nonzero non-square of GF(q).
/// Even q: beta must lie outside GF(q) and alpha^(q+1)/(beta^q + beta)^2 must
/// have absolute trace 0.
inline BmAdmissibility bm_admissibility(const GaloisField& f, FieldElement alpha, FieldElement beta) {
  f.check_owner(alpha);
  f.check_owner(beta);
  const std::uint32_t q = f.subfield_order();
  const FieldElement norm_alpha = f.norm_to_subfield(alpha);
  if (q % 2 == 1) {
    const FieldElement d = f.frobenius_q(beta) - beta;
    const FieldElement disc = d * d + f.from_int(4) * norm_alpha;
    if (!f.in_subfield(disc)) throw VerificationFailure("discriminant left GF(q)");
    if (disc.is_zero()) return {false, "discriminant (beta^q-beta)^2+4alpha^(q+1) is zero"};
    if (f.subfield_is_square(disc)) return {false, "discriminant (beta^q-beta)^2+4alpha^(q+1) is a square in GF(q)"};
    return {true, ""};
  }
  if (f.in_subfield(beta)) return {false, "beta lies in GF(q)"};
  const FieldElement s = f.frobenius_q(beta) + beta;
  const FieldElement t = norm_alpha / (s * s);
  if (f.subfield_abs_trace(t) != 0) return {false, "alpha^(q+1)/(beta^q+beta)^2 has trace 1 over GF(2)"};
  return {true, ""};
}

/// All admissible (alpha, beta) index pairs over GF(q^2), in increasing order.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> admissible_bm_pairs(const GaloisField& f) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto a : f.elements())
    for (const auto b : f.elements())
      if (bm_admissibility(f, a, b).admissible) out.emplace_back(a.index(), b.index());
  return out;
}

/// Point set {(x, alpha x^2 + beta x^(q+1) + r, 1)} u {(0,1,0)}.
inline std::vector<ProjPoint> bm_points(const ProjectivePlane& plane, FieldElement alpha, FieldElement beta) {
  const GaloisField& f = plane.field();
  std::vector<FieldElement> sub;
  for (const auto r : f.elements())
    if (f.in_subfield(r)) sub.push_back(r);
  std::vector<ProjPoint> out;
  for (const auto x : f.elements()) {
    const FieldElement base = alpha * x * x + beta * f.norm_to_subfield(x);
    for (const auto r : sub) out.push_back(plane.point_of({x, base + r, f.one()}));
  }
  out.push_back(plane.point_of({f.zero(), f.one(), f.zero()}));
  return out;
}

/// Parabolic Buekenhout-Metz unital U(alpha, beta, q) with blocks from secant lines.
inline Design construct_bm(const std::shared_ptr<const GaloisField>& field, FieldElement alpha, FieldElement beta,
                           SecantStats* stats = nullptr) {
  const GaloisField& f = *field;
  const std::uint32_t q = f.subfield_order();
  const auto adm = bm_admissibility(f, alpha, beta);
  if (!adm.admissible) throw InvalidInput("inadmissible BM parameters: " + adm.failed_condition);
  ProjectivePlane plane(field);
  auto pts = bm_points(plane, alpha, beta);
  nlohmann::json prov = {{"kind", "bm"}, {"q", q}, {"alpha", alpha.index()}, {"beta", beta.index()}};
  return detail::embedded_unital(plane, std::move(pts), q, std::move(prov), stats);
}

inline Design construct_bm(std::uint32_t q, std::uint32_t alpha_index, std::uint32_t beta_index,
                           SecantStats* stats = nullptr) {
  auto field = GaloisField::quadratic_over(q);
  return construct_bm(field, field->element(alpha_index), field->element(beta_index), stats);
}

/// The affine plane of order 3: points (x, y) in GF(3)^2 with id x + 3y, and
/// its 12 lines. This is the unique 2-(9,3,1) design.
inline Design construct_order2_unital() {
  auto id = [](std::uint32_t x, std::uint32_t y) { return x + 3 * y; };
  std::vector<Block> blocks;
  for (std::uint32_t c = 0; c < 3; ++c) blocks.push_back({id(c, 0), id(c, 1), id(c, 2)});
  for (std::uint32_t m = 0; m < 3; ++m)
    for (std::uint32_t c = 0; c < 3; ++c) {
      Block blk;
      for (std::uint32_t x = 0; x < 3; ++x) blk.push_back(id(x, (m * x + c) % 3));
      blocks.push_back(std::move(blk));
    }
  return Design(9, std::move(blocks), {{"kind", "order2"}});
}

}  // namespace uniso
