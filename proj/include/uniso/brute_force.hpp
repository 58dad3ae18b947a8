#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "uniso/errors.hpp"
#include "uniso/iso_graph.hpp"

namespace uniso {

struct BruteForceOptions {
  /// Refuse graphs with more than this many subsets to walk.
  std::uint64_t work_guard = std::uint64_t{1} << 32;
  unsigned threads = 1;
};

namespace detail {

// Best subset seen so far: ratio nb/s, then smaller s, then the
// lexicographically least sorted vertex list.
struct MaskBest {
  std::uint64_t nb = 0;
  std::uint64_t s = 0;
  std::uint64_t mask = 0;
  bool valid = false;

  bool improved_by(std::uint64_t cnb, std::uint64_t cs, std::uint64_t cmask) const {
    if (!valid) return true;
    const std::uint64_t lhs = cnb * s, rhs = nb * cs;
    if (lhs != rhs) return lhs < rhs;
    if (cs != s) return cs < s;
    const std::uint64_t diff = cmask ^ mask;
    return diff != 0 && (cmask & (diff & (~diff + 1))) != 0;
  }
  void offer(std::uint64_t cnb, std::uint64_t cs, std::uint64_t cmask) {
    if (improved_by(cnb, cs, cmask)) *this = {cnb, cs, cmask, true};
  }
};

// Walks every subset whose high bits equal `prefix` in Gray-code order,
// maintaining per-vertex counts of neighbors in S and |N(S)| incrementally.
inline MaskBest gray_walk(const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t nv, std::uint32_t low_bits,
                          std::uint64_t prefix) {
  std::vector<std::uint32_t> cnt(nv, 0);
  std::uint64_t mask = prefix << low_bits;
  std::uint64_t s = static_cast<std::uint64_t>(std::popcount(mask));
  for (std::uint32_t u = 0; u < nv; ++u)
    if ((mask >> u) & 1U)
      for (auto w : adj[u]) ++cnt[w];
  std::uint64_t nb = 0;
  for (std::uint32_t u = 0; u < nv; ++u)
    if (!((mask >> u) & 1U) && cnt[u] > 0) ++nb;

  MaskBest best;
  auto consider = [&] {
    if (s > 0 && 2 * s <= nv) best.offer(nb, s, mask);
  };
  consider();
  const std::uint64_t steps = std::uint64_t{1} << low_bits;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const auto u = static_cast<std::uint32_t>(std::countr_zero(i));
    const std::uint64_t bit = std::uint64_t{1} << u;
    if (mask & bit) {
      mask ^= bit;
      --s;
      for (auto w : adj[u]) {
        if (--cnt[w] == 0 && !((mask >> w) & 1U)) --nb;
      }
      if (cnt[u] > 0) ++nb;
    } else {
      if (cnt[u] > 0) --nb;
      mask |= bit;
      ++s;
      for (auto w : adj[u]) {
        if (cnt[w]++ == 0 && !((mask >> w) & 1U)) ++nb;
      }
    }
    consider();
  }
  return best;
}

}  // namespace detail

/// Exact vertex-isoperimetric number by enumerating every nonempty S with
/// 2|S| <= |V|. Ties are broken by smaller |S|, then by the lexicographically
/// least sorted vertex-id list. Throws BudgetExceeded above the work guard.
inline IsoResult brute_force_iso(const IsoGraph& g, const BruteForceOptions& opts = {}) {
  const std::uint32_t nv = g.num_vertices();
  if (nv > 62) throw BudgetExceeded("brute force supports at most 62 vertices; use the heuristic and certificate path");
  const std::uint64_t work = std::uint64_t{1} << nv;
  if (work > opts.work_guard) {
    throw BudgetExceeded("brute force would walk 2^" + std::to_string(nv) + " subsets, above the work guard of " +
                         std::to_string(opts.work_guard) + "; use the heuristic and certificate path");
  }
  std::vector<std::vector<std::uint32_t>> adj(nv);
  for (std::uint32_t u = 0; u < nv; ++u) adj[u] = g.neighbors(u);

  // Partition on the top bits; the merge is a total order so the result does
  // not depend on the partition.
  std::uint32_t high_bits = 0;
  const unsigned threads = std::max(1U, opts.threads);
  while (threads > 1 && (1U << high_bits) < 4 * threads && high_bits + 8 < nv) ++high_bits;
  const std::uint32_t low_bits = nv - high_bits;
  const std::uint64_t tasks = std::uint64_t{1} << high_bits;

  detail::MaskBest best;
  if (threads == 1) {
    for (std::uint64_t t = 0; t < tasks; ++t) {
      auto r = detail::gray_walk(adj, nv, low_bits, t);
      if (r.valid) best.offer(r.nb, r.s, r.mask);
    }
  } else {
    std::vector<detail::MaskBest> results(tasks);
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t t; (t = next.fetch_add(1)) < tasks;) results[t] = detail::gray_walk(adj, nv, low_bits, t);
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& r : results)
      if (r.valid) best.offer(r.nb, r.s, r.mask);
  }
  if (!best.valid) throw VerificationFailure("graph has no admissible subset");

  VertexSubset witness = VertexSubset::empty_for(g);
  for (std::uint32_t u = 0; u < nv; ++u) {
    if ((best.mask >> u) & 1U) {
      if (u < g.v()) witness.points.set(u);
      else witness.blocks.set(u - g.v());
    }
  }
  return {make_rational(static_cast<std::int64_t>(best.nb), static_cast<std::int64_t>(best.s)), std::move(witness),
          IsoMethod::brute};
}

}  // namespace uniso
