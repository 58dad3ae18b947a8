#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "uniso/bitset.hpp"
#include "uniso/design.hpp"
#include "uniso/errors.hpp"
#include "uniso/rational.hpp"

namespace uniso {

enum class Flavor { incidence, nonincidence };

inline std::string to_string(Flavor f) { return f == Flavor::incidence ? "incidence" : "nonincidence"; }

inline Flavor parse_flavor(const std::string& s) {
  if (s == "incidence") return Flavor::incidence;
  if (s == "nonincidence" || s == "non-incidence") return Flavor::nonincidence;
  throw InvalidInput("unknown graph flavor '" + s + "'");
}

/// Bipartite (non-)incidence graph of a design.
///
/// Vertices are numbered 0..v-1 for points and v..v+b-1 for blocks. Adjacency
/// is held both as per-side bitsets and as flat neighbor lists.
class IsoGraph {
 public:
  IsoGraph(const Design& d, Flavor flavor)
      : v_(d.v()), b_(d.b()), flavor_(flavor),
        params_(flavor == Flavor::incidence ? d.params() : d.params().complement()) {
    point_adj_.assign(v_, Bitset(b_));
    block_adj_.reserve(b_);
    for (std::uint32_t j = 0; j < b_; ++j) {
      Bitset pts = flavor == Flavor::incidence ? d.block_set(j) : d.block_set(j).complement();
      pts.for_each([&](std::uint32_t p) { point_adj_[p].set(j); });
      block_adj_.push_back(std::move(pts));
    }
    adj_.resize(v_ + b_);
    for (std::uint32_t p = 0; p < v_; ++p) point_adj_[p].for_each([&](std::uint32_t j) { adj_[p].push_back(v_ + j); });
    for (std::uint32_t j = 0; j < b_; ++j) block_adj_[j].for_each([&](std::uint32_t p) { adj_[v_ + j].push_back(p); });
  }

  std::uint32_t v() const { return v_; }
  std::uint32_t b() const { return b_; }
  std::uint32_t num_vertices() const { return v_ + b_; }
  Flavor flavor() const { return flavor_; }
  /// Parameters of the design whose incidence graph this is.
  const DesignParams& params() const { return params_; }

  std::uint64_t num_edges() const {
    std::uint64_t e = 0;
    for (const auto& s : point_adj_) e += s.count();
    return e;
  }

  /// Blocks adjacent to point p.
  const Bitset& point_adjacency(std::uint32_t p) const { return point_adj_.at(p); }
  /// Points adjacent to block j.
  const Bitset& block_adjacency(std::uint32_t j) const { return block_adj_.at(j); }
  /// Neighbors of a unified vertex id.
  const std::vector<std::uint32_t>& neighbors(std::uint32_t u) const { return adj_.at(u); }

 private:
  std::uint32_t v_;
  std::uint32_t b_;
  Flavor flavor_;
  DesignParams params_;
  std::vector<Bitset> point_adj_;
  std::vector<Bitset> block_adj_;
  std::vector<std::vector<std::uint32_t>> adj_;
};

/// A vertex subset split into its point part X and block part Y.
struct VertexSubset {
  Bitset points;
  Bitset blocks;

  static VertexSubset empty_for(const IsoGraph& g) { return {Bitset(g.v()), Bitset(g.b())}; }

  std::size_t size() const { return points.count() + blocks.count(); }
  bool empty() const { return points.none() && blocks.none(); }

  /// Unified vertex ids (points first, then blocks offset by v).
  std::vector<std::uint32_t> vertex_ids() const {
    std::vector<std::uint32_t> out = points.indices();
    const auto v = static_cast<std::uint32_t>(points.size());
    blocks.for_each([&](std::uint32_t j) { out.push_back(v + j); });
    return out;
  }

  friend bool operator==(const VertexSubset&, const VertexSubset&) = default;
};

/// Lexicographic order on unified vertex id lists.
inline bool witness_less(const VertexSubset& a, const VertexSubset& b) {
  const auto ia = a.vertex_ids(), ib = b.vertex_ids();
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

/// Blocks adjacent to X.
inline Bitset point_neighborhood(const IsoGraph& g, const Bitset& x) {
  Bitset out(g.b());
  x.for_each([&](std::uint32_t p) { out |= g.point_adjacency(p); });
  return out;
}

/// Points adjacent to Y.
inline Bitset block_neighborhood(const IsoGraph& g, const Bitset& y) {
  Bitset out(g.v());
  y.for_each([&](std::uint32_t j) { out |= g.block_adjacency(j); });
  return out;
}

/// N(S): vertices outside S adjacent to S.
inline VertexSubset neighborhood(const IsoGraph& g, const VertexSubset& s) {
  if (s.points.size() != g.v() || s.blocks.size() != g.b()) throw InvalidInput("subset does not match graph sides");
  return {block_neighborhood(g, s.blocks) - s.points, point_neighborhood(g, s.points) - s.blocks};
}

/// x = |X|, y = |Y|, x' = |N(Y) \ X|, y' = |N(X) \ Y|.
struct Profile {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::uint64_t x_prime = 0;
  std::uint64_t y_prime = 0;

  friend bool operator==(const Profile&, const Profile&) = default;
};

inline Profile profile(const IsoGraph& g, const VertexSubset& s) {
  const VertexSubset n = neighborhood(g, s);
  return {s.points.count(), s.blocks.count(), n.points.count(), n.blocks.count()};
}

/// True when 2|S| <= |V(G)|, the size constraint of the isoperimetric minimum.
inline bool within_half(const IsoGraph& g, std::uint64_t size) { return 2 * size <= g.num_vertices(); }

/// |N(S)| / |S| as an exact fraction.
inline Rational iso_ratio(const IsoGraph& g, const VertexSubset& s) {
  const std::size_t size = s.size();
  if (size == 0) throw InvalidInput("iso_ratio of the empty set");
  if (!within_half(g, size)) throw InvalidInput("subset exceeds half of the vertex set");
  const Profile pr = profile(g, s);
  return make_rational(static_cast<std::int64_t>(pr.x_prime + pr.y_prime), static_cast<std::int64_t>(size));
}

enum class IsoMethod { brute, heuristic, certificate };

inline std::string to_string(IsoMethod m) {
  switch (m) {
    case IsoMethod::brute: return "brute";
    case IsoMethod::heuristic: return "heuristic";
    case IsoMethod::certificate: return "certificate";
  }
  return "unknown";
}

struct IsoResult {
  Rational ratio;
  VertexSubset witness;
  IsoMethod method;
};

}  // namespace uniso
