#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "uniso/iso_graph.hpp"

namespace uniso {

struct HeuristicOptions {
  std::uint64_t seed = 1;
  /// Number of independent local-search starts.
  std::uint64_t restarts = 256;
  /// Random swap attempts per stagnation round.
  std::uint64_t swap_samples = 512;
  unsigned threads = 1;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

// ratio a_n/a_s < b_n/b_s
inline bool ratio_less(std::uint64_t an, std::uint64_t as, std::uint64_t bn, std::uint64_t bs) {
  return an * bs < bn * as;
}

// Subset with per-vertex counts of neighbors inside S, so single-vertex
// moves are priced in O(degree).
class LocalState {
 public:
  explicit LocalState(const IsoGraph& g) : g_(g), in_(g.num_vertices(), 0), cnt_(g.num_vertices(), 0) {}

  std::uint64_t size() const { return s_; }
  std::uint64_t boundary() const { return nb_; }
  bool contains(std::uint32_t u) const { return in_[u] != 0; }

  std::uint64_t boundary_after_add(std::uint32_t u) const {
    std::uint64_t nb = nb_ - (cnt_[u] > 0 ? 1 : 0);
    for (auto w : g_.neighbors(u))
      if (!in_[w] && cnt_[w] == 0) ++nb;
    return nb;
  }

  std::uint64_t boundary_after_remove(std::uint32_t u) const {
    std::uint64_t nb = nb_ + (cnt_[u] > 0 ? 1 : 0);
    for (auto w : g_.neighbors(u))
      if (!in_[w] && cnt_[w] == 1) --nb;
    return nb;
  }

  void add(std::uint32_t u) {
    nb_ = boundary_after_add(u);
    in_[u] = 1;
    ++s_;
    for (auto w : g_.neighbors(u)) ++cnt_[w];
  }

  void remove(std::uint32_t u) {
    nb_ = boundary_after_remove(u);
    in_[u] = 0;
    --s_;
    for (auto w : g_.neighbors(u)) --cnt_[w];
  }

  bool in_boundary(std::uint32_t u) const { return !in_[u] && cnt_[u] > 0; }

  VertexSubset subset() const {
    VertexSubset out = VertexSubset::empty_for(g_);
    for (std::uint32_t u = 0; u < in_.size(); ++u) {
      if (!in_[u]) continue;
      if (u < g_.v()) out.points.set(u);
      else out.blocks.set(u - g_.v());
    }
    return out;
  }

 private:
  const IsoGraph& g_;
  std::vector<std::uint8_t> in_;
  std::vector<std::uint32_t> cnt_;
  std::uint64_t s_ = 0;
  std::uint64_t nb_ = 0;
};

struct LocalBest {
  std::uint64_t nb = 0;
  std::uint64_t s = 0;
  VertexSubset witness;
  bool valid = false;

  bool improved_by(std::uint64_t cnb, std::uint64_t cs, const VertexSubset& w) const {
    if (!valid) return true;
    if (cnb * s != nb * cs) return cnb * s < nb * cs;
    if (cs != s) return cs < s;
    return witness_less(w, witness);
  }
};

// Adds every boundary block of the current point part, as far as the size
// limit allows. Returns the vertices added so the move can be undone.
inline std::vector<std::uint32_t> block_closure(const IsoGraph& g, LocalState& st) {
  std::vector<std::uint32_t> added;
  const std::uint32_t nv = g.num_vertices();
  for (std::uint32_t u = g.v(); u < nv; ++u) {
    if (!st.in_boundary(u)) continue;
    if (2 * (st.size() + 1) > nv) break;
    bool touches_points = false;
    for (auto w : g.neighbors(u))
      if (st.contains(w)) {
        touches_points = true;
        break;
      }
    if (!touches_points) continue;
    st.add(u);
    added.push_back(u);
  }
  return added;
}

inline LocalBest local_search(const IsoGraph& g, std::uint64_t restart_seed, std::uint64_t restart_index,
                              std::uint64_t swap_samples) {
  std::mt19937_64 rng(restart_seed);
  const std::uint32_t nv = g.num_vertices();
  LocalState st(g);

  // Alternate between three start shapes.
  switch (restart_index % 3) {
    case 0:
      st.add(static_cast<std::uint32_t>(below(rng, nv)));
      break;
    case 1: {
      const auto p = static_cast<std::uint32_t>(below(rng, g.v()));
      st.add(p);
      block_closure(g, st);
      break;
    }
    default: {
      const std::uint64_t k = 1 + below(rng, std::max<std::uint64_t>(std::min<std::uint64_t>(g.v(), 4), g.v() / 4));
      for (std::uint64_t i = 0; i < k; ++i) {
        const auto p = static_cast<std::uint32_t>(below(rng, g.v()));
        if (!st.contains(p) && 2 * (st.size() + 1) <= nv) st.add(p);
      }
      block_closure(g, st);
      break;
    }
  }

  LocalBest best;
  auto record = [&] {
    if (st.size() == 0) return;
    auto w = st.subset();
    if (best.improved_by(st.boundary(), st.size(), w)) best = {st.boundary(), st.size(), std::move(w), true};
  };
  record();

  const std::uint64_t max_rounds = 8ULL * nv + 64;
  for (std::uint64_t round = 0; round < max_rounds; ++round) {
    // Best single add or remove.
    std::uint64_t bn = st.boundary(), bs = st.size();
    std::int64_t move = -1;
    bool move_is_add = false;
    for (std::uint32_t u = 0; u < nv; ++u) {
      if (st.contains(u)) {
        if (st.size() <= 1) continue;
        const std::uint64_t nb = st.boundary_after_remove(u);
        if (ratio_less(nb, st.size() - 1, bn, bs)) {
          bn = nb;
          bs = st.size() - 1;
          move = u;
          move_is_add = false;
        }
      } else {
        if (2 * (st.size() + 1) > nv) continue;
        const std::uint64_t nb = st.boundary_after_add(u);
        if (ratio_less(nb, st.size() + 1, bn, bs)) {
          bn = nb;
          bs = st.size() + 1;
          move = u;
          move_is_add = true;
        }
      }
    }
    if (move >= 0) {
      if (move_is_add) st.add(static_cast<std::uint32_t>(move));
      else st.remove(static_cast<std::uint32_t>(move));
      record();
      continue;
    }

    // Block-closure kick.
    {
      const std::uint64_t on = st.boundary(), os = st.size();
      auto added = block_closure(g, st);
      if (!added.empty() && ratio_less(st.boundary(), st.size(), on, os)) {
        record();
        continue;
      }
      for (auto it = added.rbegin(); it != added.rend(); ++it) st.remove(*it);
    }

    // Random swaps at constant size; accept the first strict improvement.
    bool swapped = false;
    std::vector<std::uint32_t> inside, outside;
    for (std::uint32_t u = 0; u < nv; ++u) (st.contains(u) ? inside : outside).push_back(u);
    if (!inside.empty() && !outside.empty()) {
      for (std::uint64_t t = 0; t < swap_samples; ++t) {
        const auto a = inside[below(rng, inside.size())];
        const auto w = outside[below(rng, outside.size())];
        const std::uint64_t before = st.boundary();
        st.remove(a);
        if (st.boundary_after_add(w) < before) {
          st.add(w);
          swapped = true;
          break;
        }
        st.add(a);
      }
    }
    if (swapped) {
      record();
      continue;
    }
    break;
  }
  return best;
}

}  // namespace detail

/// Multi-start local search for a small |N(S)|/|S|, an upper bound on i(G).
///
/// Moves are single-vertex additions and removals (best strict improvement),
/// a block-closure kick that pulls the boundary blocks of X into S, and random
/// swaps. Restart i draws its randomness from (seed, i) only, so the result is
/// independent of the thread count.
inline IsoResult heuristic_iso(const IsoGraph& g, const HeuristicOptions& opts = {}) {
  if (g.num_vertices() < 2) throw InvalidInput("graph too small");
  const std::uint64_t restarts = std::max<std::uint64_t>(1, opts.restarts);
  std::vector<detail::LocalBest> results(restarts);
  auto run = [&](std::uint64_t i) {
    const std::uint64_t rs = detail::splitmix64(opts.seed ^ detail::splitmix64(i + 1));
    results[i] = detail::local_search(g, rs, i, opts.swap_samples);
  };
  const unsigned threads = std::max(1U, opts.threads);
  if (threads == 1) {
    for (std::uint64_t i = 0; i < restarts; ++i) run(i);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (std::uint64_t i; (i = next.fetch_add(1)) < restarts;) run(i);
      });
    for (auto& th : pool) th.join();
  }
  detail::LocalBest best;
  for (auto& r : results)
    if (r.valid && best.improved_by(r.nb, r.s, r.witness)) best = std::move(r);
  return {make_rational(static_cast<std::int64_t>(best.nb), static_cast<std::int64_t>(best.s)),
          std::move(best.witness), IsoMethod::heuristic};
}

}  // namespace uniso
