#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "uniso/bitset.hpp"
#include "uniso/errors.hpp"

namespace uniso {

using Block = std::vector<std::uint32_t>;

/// Parameters (v, b, r, k, lambda) of a 2-design.
struct DesignParams {
  std::uint64_t v = 0;
  std::uint64_t b = 0;
  std::uint64_t r = 0;
  std::uint64_t k = 0;
  std::uint64_t lambda = 0;

  friend bool operator==(const DesignParams&, const DesignParams&) = default;

  /// (n^3+1, n^4-n^3+n^2, n^2, n+1, 1).
  static DesignParams unital(std::uint64_t n) {
    return {n * n * n + 1, n * n * n * n - n * n * n + n * n, n * n, n + 1, 1};
  }

  /// Parameters of the complementary design.
  DesignParams complement() const { return {v, b, b - r, v - k, b - 2 * r + lambda}; }

  std::string to_string() const {
    return "(" + std::to_string(v) + "," + std::to_string(b) + "," + std::to_string(r) + "," +
           std::to_string(k) + "," + std::to_string(lambda) + ")";
  }
};

/// Full validation of a block list on points 0..v-1 as a 2-design.
///
/// Counts every point pair across all blocks, checks point degrees and the
/// identities vr = bk and r(k-1) = lambda(v-1). Blocks must already be sorted
/// and duplicate-free internally.
inline DesignParams validate_design(std::uint32_t v, const std::vector<Block>& blocks) {
  if (blocks.empty()) throw InvalidInput("design has no blocks");
  if (v < 2) throw InvalidInput("design needs at least two points");
  const std::size_t k = blocks.front().size();
  std::vector<std::uint32_t> degree(v, 0);
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const Block& blk = blocks[j];
    if (blk.size() != k) {
      throw VerificationFailure("non-uniform block size: block " + std::to_string(j) + " has " +
                                std::to_string(blk.size()) + " points, expected " + std::to_string(k));
    }
    for (std::size_t i = 0; i < blk.size(); ++i) {
      if (blk[i] >= v) throw InvalidInput("block " + std::to_string(j) + " has point id out of range");
      if (i > 0 && blk[i] <= blk[i - 1]) throw InvalidInput("block " + std::to_string(j) + " is not strictly sorted");
      ++degree[blk[i]];
    }
  }
  if (k < 2) throw VerificationFailure("blocks must have at least two points");

  std::vector<std::uint32_t> pair_count(static_cast<std::size_t>(v) * v, 0);
  for (const Block& blk : blocks)
    for (std::size_t i = 0; i < blk.size(); ++i)
      for (std::size_t j = i + 1; j < blk.size(); ++j) ++pair_count[static_cast<std::size_t>(blk[i]) * v + blk[j]];

  const std::uint32_t lambda = pair_count[1];
  for (std::uint32_t a = 0; a < v; ++a) {
    for (std::uint32_t c = a + 1; c < v; ++c) {
      const std::uint32_t got = pair_count[static_cast<std::size_t>(a) * v + c];
      if (got != lambda) {
        throw VerificationFailure("pair {" + std::to_string(a) + "," + std::to_string(c) + "} lies in " +
                                  std::to_string(got) + " blocks, expected " + std::to_string(lambda));
      }
    }
  }
  const std::uint32_t r = degree[0];
  for (std::uint32_t p = 0; p < v; ++p) {
    if (degree[p] != r) {
      throw VerificationFailure("point " + std::to_string(p) + " lies in " + std::to_string(degree[p]) +
                                " blocks, expected " + std::to_string(r));
    }
  }
  DesignParams params{v, blocks.size(), r, k, lambda};
  if (!(params.v > params.k && params.k > params.lambda && params.lambda >= 1)) {
    throw VerificationFailure("parameters " + params.to_string() + " violate v > k > lambda >= 1");
  }
  if (params.v * params.r != params.b * params.k) throw VerificationFailure("identity vr = bk fails");
  if (params.r * (params.k - 1) != params.lambda * (params.v - 1)) {
    throw VerificationFailure("identity r(k-1) = lambda(v-1) fails");
  }
  return params;
}

/// A validated 2-design on points 0..v-1. Immutable once constructed.
///
/// Blocks are stored sorted internally and the block list is kept in
/// lexicographic order, which is also the serialized order.
class Design {
 public:
  Design(std::uint32_t v, std::vector<Block> blocks, nlohmann::json provenance = nlohmann::json::object())
      : v_(v), blocks_(std::move(blocks)), provenance_(std::move(provenance)) {
    for (auto& blk : blocks_) {
      std::sort(blk.begin(), blk.end());
      if (std::adjacent_find(blk.begin(), blk.end()) != blk.end()) throw InvalidInput("block repeats a point");
    }
    std::sort(blocks_.begin(), blocks_.end());
    if (std::adjacent_find(blocks_.begin(), blocks_.end()) != blocks_.end()) throw InvalidInput("repeated block");
    params_ = validate_design(v_, blocks_);
    point_blocks_.assign(v_, {});
    block_sets_.reserve(blocks_.size());
    for (std::uint32_t j = 0; j < blocks_.size(); ++j) {
      for (auto p : blocks_[j]) point_blocks_[p].push_back(j);
      block_sets_.push_back(Bitset::from_indices(v_, blocks_[j]));
    }
  }

  std::uint32_t v() const { return v_; }
  std::uint32_t b() const { return static_cast<std::uint32_t>(blocks_.size()); }
  const DesignParams& params() const { return params_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(std::uint32_t j) const { return blocks_.at(j); }
  const nlohmann::json& provenance() const { return provenance_; }

  /// Ids of the blocks through point p, increasing.
  const std::vector<std::uint32_t>& blocks_through(std::uint32_t p) const { return point_blocks_.at(p); }
  /// Block j as a bitset over points.
  const Bitset& block_set(std::uint32_t j) const { return block_sets_.at(j); }
  const std::vector<Bitset>& block_sets() const { return block_sets_; }

  /// Order n when the parameters are those of a unital of order n >= 2.
  std::optional<std::uint64_t> unital_order() const {
    if (params_.k < 3) return std::nullopt;
    const std::uint64_t n = params_.k - 1;
    if (params_ == DesignParams::unital(n)) return n;
    return std::nullopt;
  }

  /// Design with the same blocks and a different provenance record.
  Design with_provenance(nlohmann::json provenance) const { return Design(v_, blocks_, std::move(provenance)); }

 private:
  std::uint32_t v_;
  std::vector<Block> blocks_;
  nlohmann::json provenance_;
  DesignParams params_;
  std::vector<std::vector<std::uint32_t>> point_blocks_;
  std::vector<Bitset> block_sets_;
};

/// The design whose blocks are the complements P \ B.
inline Design complement(const Design& d) {
  const DesignParams& p = d.params();
  if (p.v - p.k < 2) throw InvalidInput("complement needs v - k >= 2");
  if (p.b + p.lambda < 2 * p.r + 1) throw InvalidInput("complement needs b - 2r + lambda >= 1");
  std::vector<Block> blocks;
  blocks.reserve(d.b());
  for (const Bitset& s : d.block_sets()) blocks.push_back(s.complement().indices());
  nlohmann::json prov = {{"kind", "complement"}, {"of", d.provenance()}};
  Design out(d.v(), std::move(blocks), std::move(prov));
  if (!(out.params() == p.complement())) {
    throw VerificationFailure("complement parameters " + out.params().to_string() + " differ from expected " +
                              p.complement().to_string());
  }
  return out;
}

}  // namespace uniso
