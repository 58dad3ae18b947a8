#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

#include "uniso/errors.hpp"
#include "uniso/finite_field.hpp"

namespace uniso {

struct ProjPoint {
  std::uint32_t id;
  auto operator<=>(const ProjPoint&) const = default;
};

struct ProjLine {
  std::uint32_t id;
  auto operator<=>(const ProjLine&) const = default;
};

using Triple = std::array<FieldElement, 3>;

/// The Desarguesian plane PG(2, F) over a finite field F of order N.
///
/// Points and lines are homogeneous triples normalized so that the first
/// nonzero coordinate is 1. Their ids are their ranks in lexicographic order
/// of the normalized index triples:
///   (0,0,1) -> 0,  (0,1,b) -> 1 + b,  (1,a,b) -> 1 + N + a*N + b.
/// The same encoding is used for lines via their dual coordinates.
class ProjectivePlane {
 public:
  explicit ProjectivePlane(std::shared_ptr<const GaloisField> field) : field_(std::move(field)) {
    if (!field_) throw InvalidInput("null field");
    n_ = field_->order();
    count_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(n_) * n_ + n_ + 1);
  }

  const GaloisField& field() const { return *field_; }
  std::shared_ptr<const GaloisField> field_ptr() const { return field_; }
  std::uint32_t num_points() const { return count_; }
  std::uint32_t num_lines() const { return count_; }
  std::uint32_t points_per_line() const { return n_ + 1; }

  std::vector<ProjPoint> points() const {
    std::vector<ProjPoint> out(count_);
    for (std::uint32_t i = 0; i < count_; ++i) out[i] = ProjPoint{i};
    return out;
  }
  std::vector<ProjLine> lines() const {
    std::vector<ProjLine> out(count_);
    for (std::uint32_t i = 0; i < count_; ++i) out[i] = ProjLine{i};
    return out;
  }

  Triple coordinates(ProjPoint p) const { return decode(p.id); }
  Triple coordinates(ProjLine l) const { return decode(l.id); }

  /// Scales a nonzero triple so that its first nonzero entry is 1.
  Triple normalize(const Triple& t) const {
    for (const auto& c : t) field_->check_owner(c);
    for (std::size_t i = 0; i < 3; ++i) {
      if (!t[i].is_zero()) {
        const FieldElement s = t[i].inverse();
        return {t[0] * s, t[1] * s, t[2] * s};
      }
    }
    throw InvalidInput("the zero triple is not a projective point");
  }

  ProjPoint point_of(const Triple& t) const { return ProjPoint{encode(normalize(t))}; }
  ProjLine line_of(const Triple& t) const { return ProjLine{encode(normalize(t))}; }

  bool incident(ProjPoint p, ProjLine l) const {
    const Triple x = decode(p.id), a = decode(l.id);
    return (a[0] * x[0] + a[1] * x[1] + a[2] * x[2]).is_zero();
  }

  ProjLine line_through(ProjPoint p1, ProjPoint p2) const {
    if (p1 == p2) throw InvalidInput("line_through needs two distinct points");
    return line_of(cross(decode(p1.id), decode(p2.id)));
  }

  ProjPoint meet(ProjLine l1, ProjLine l2) const {
    if (l1 == l2) throw InvalidInput("meet needs two distinct lines");
    return point_of(cross(decode(l1.id), decode(l2.id)));
  }

  /// The N+1 points of a line, in increasing id order.
  std::vector<ProjPoint> points_on_line(ProjLine l) const {
    const Triple a = decode(l.id);
    // Crossing the line with the coordinate vectors yields points on it; at
    // least two of them are distinct.
    std::vector<Triple> candidates;
    for (std::size_t i = 0; i < 3; ++i) {
      Triple e{field_->zero(), field_->zero(), field_->zero()};
      e[i] = field_->one();
      Triple c = cross(a, e);
      if (!(c[0].is_zero() && c[1].is_zero() && c[2].is_zero())) candidates.push_back(normalize(c));
    }
    const Triple u = candidates.front();
    Triple w = u;
    for (const auto& c : candidates) {
      if (encode(c) != encode(u)) {
        w = c;
        break;
      }
    }
    if (encode(w) == encode(u)) throw VerificationFailure("could not span line");
    std::vector<ProjPoint> out;
    out.reserve(n_ + 1);
    out.push_back(ProjPoint{encode(w)});
    for (const auto& t : field_->elements()) {
      out.push_back(point_of({u[0] + t * w[0], u[1] + t * w[1], u[2] + t * w[2]}));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Triple cross(const Triple& a, const Triple& b) const {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  }

  /// Index triple of a point or line id (the JSON export form).
  std::array<std::uint32_t, 3> index_triple(std::uint32_t id) const {
    const Triple t = decode(id);
    return {t[0].index(), t[1].index(), t[2].index()};
  }

 private:
  std::uint32_t encode(const Triple& t) const {
    if (t[0].is_zero()) {
      if (t[1].is_zero()) return 0;
      return 1 + t[2].index();
    }
    return 1 + n_ + t[1].index() * n_ + t[2].index();
  }

  Triple decode(std::uint32_t id) const {
    if (id >= count_) throw InvalidInput("projective id out of range");
    const GaloisField& f = *field_;
    if (id == 0) return {f.zero(), f.zero(), f.one()};
    if (id <= n_) return {f.zero(), f.one(), f.element(id - 1)};
    const std::uint32_t rest = id - 1 - n_;
    return {f.one(), f.element(rest / n_), f.element(rest % n_)};
  }

  std::shared_ptr<const GaloisField> field_;
  std::uint32_t n_ = 0;
  std::uint32_t count_ = 0;
};

}  // namespace uniso
