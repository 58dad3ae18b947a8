#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "uniso/bitset.hpp"
#include "uniso/design.hpp"
#include "uniso/errors.hpp"
#include "uniso/parallel.hpp"

namespace uniso {

/// For a design with lambda = 1: the unique block through each point pair.
class CollinearityIndex {
 public:
  explicit CollinearityIndex(const Design& d) : d_(d), v_(d.v()) {
    if (d.params().lambda != 1) throw InvalidInput("collinearity index needs lambda = 1");
    pair_block_.assign(static_cast<std::size_t>(v_) * v_, kNone);
    for (std::uint32_t j = 0; j < d.b(); ++j) {
      const Block& blk = d.block(j);
      for (auto a : blk)
        for (auto c : blk)
          if (a != c) pair_block_[static_cast<std::size_t>(a) * v_ + c] = j;
    }
  }

  const Design& design() const { return d_; }

  std::uint32_t lookup(std::uint32_t a, std::uint32_t c) const {
    if (a == c || a >= v_ || c >= v_) throw InvalidInput("lookup needs two distinct points");
    return pair_block_[static_cast<std::size_t>(a) * v_ + c];
  }

 private:
  static constexpr std::uint32_t kNone = ~std::uint32_t{0};
  const Design& d_;
  std::uint32_t v_;
  std::vector<std::uint32_t> pair_block_;
};

namespace detail {
inline void require_lambda_one(const Design& d) {
  if (d.params().lambda != 1) throw InvalidInput("arcs are defined here only for lambda = 1 designs");
}
}  // namespace detail

/// No three points of A on a common block. Sets of size <= 2 are arcs.
inline bool is_arc(const Design& d, const Bitset& a) {
  detail::require_lambda_one(d);
  if (a.size() != d.v()) throw InvalidInput("point set does not match design");
  for (const Bitset& blk : d.block_sets())
    if (blk.intersection_count(a) > 2) return false;
  return true;
}

inline bool is_arc(const Design& d, const std::vector<std::uint32_t>& a) {
  return is_arc(d, Bitset::from_indices(d.v(), a));
}

/// Arc that no outside point extends: every outside point lies on a block
/// meeting A in two points.
inline bool is_complete_arc(const Design& d, const Bitset& a) {
  if (!is_arc(d, a)) throw InvalidInput("set is not an arc");
  Bitset covered = a;
  for (const Bitset& blk : d.block_sets())
    if (blk.intersection_count(a) == 2) covered |= blk;
  return covered.count() == d.v();
}

inline bool is_complete_arc(const Design& d, const std::vector<std::uint32_t>& a) {
  return is_complete_arc(d, Bitset::from_indices(d.v(), a));
}

enum class ArcMode { greedy, exact };

enum class ArcStatus { found, infeasible, budget_exhausted };

inline std::string to_string(ArcStatus s) {
  switch (s) {
    case ArcStatus::found: return "found";
    case ArcStatus::infeasible: return "infeasible";
    case ArcStatus::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

struct ArcSearchOptions {
  ArcMode mode = ArcMode::exact;
  std::uint64_t seed = 1;
  /// Greedy: number of restarts. Exact: node limit for branch-and-bound.
  std::uint64_t budget = 0;
  unsigned threads = 1;

  static constexpr std::uint64_t kDefaultGreedyRestarts = 512;
  static constexpr std::uint64_t kDefaultNodeBudget = 2'000'000'000ULL;
};

struct ArcSearchResult {
  ArcStatus status = ArcStatus::infeasible;
  std::vector<std::uint32_t> arc;  // sorted point ids
  std::uint64_t nodes = 0;
};

struct MaxArcResult {
  std::uint64_t size = 0;
  std::vector<std::uint32_t> witness;
  bool proven_optimal = false;
  std::uint64_t nodes = 0;
};

namespace detail {

// Binary include/exclude branch-and-bound on the lowest-id candidate point.
//
// The candidate set holds the points that extend the current arc. Including p
// removes every point on a block joining p to an arc point. Bound: the blocks
// through an arc point a partition the other points and each holds at most one
// further arc point, so |A| + #(blocks through a meeting the candidates) caps
// any completion; the minimum over a in A is used, or |A| + |C| when A is empty.
class ArcSearchEngine {
 public:
  explicit ArcSearchEngine(const Design& d) : d_(d), index_(d) {}

  struct Node {
    std::vector<std::uint32_t> arc;
    Bitset cand;
  };

  std::uint64_t bound(const std::vector<std::uint32_t>& arc, const Bitset& cand) const {
    std::uint64_t best = cand.count();
    for (auto a : arc) {
      std::uint64_t lines = 0;
      for (auto j : d_.blocks_through(a))
        if (d_.block_set(j).intersects(cand)) ++lines;
      best = std::min(best, lines);
    }
    return arc.size() + best;
  }

  Bitset include(const std::vector<std::uint32_t>& arc, const Bitset& cand, std::uint32_t p) const {
    Bitset next = cand;
    next.reset(p);
    for (auto a : arc) next -= d_.block_set(index_.lookup(a, p));
    return next;
  }

  Bitset all_points() const {
    Bitset c(d_.v());
    c.set_all();
    return c;
  }

  // Frontier of open nodes after `depth` branchings, in DFS order, pruned
  // with `prune(bound)`. Nodes whose arc reaches `stop_size` are kept as
  // leaves so that a stopping search sees them exactly as plain DFS would.
  template <typename Prune>
  std::vector<Node> frontier(unsigned depth, Prune prune, std::uint64_t stop_size = ~std::uint64_t{0}) const {
    std::vector<Node> out;
    std::vector<std::pair<Node, unsigned>> stack;
    stack.push_back({Node{{}, all_points()}, 0});
    while (!stack.empty()) {
      auto [node, dep] = std::move(stack.back());
      stack.pop_back();
      if (prune(bound(node.arc, node.cand))) continue;
      const std::size_t p = node.cand.find_first();
      if (dep >= depth || p >= node.cand.size() || node.arc.size() >= stop_size) {
        out.push_back(std::move(node));
        continue;
      }
      const auto pt = static_cast<std::uint32_t>(p);
      Node inc{node.arc, include(node.arc, node.cand, pt)};
      inc.arc.push_back(pt);
      Node exc{node.arc, node.cand};
      exc.cand.reset(pt);
      // Exclude pushed first so that include is expanded first.
      stack.push_back({std::move(exc), dep + 1});
      stack.push_back({std::move(inc), dep + 1});
    }
    return out;
  }

  // Depth-first search below one node. `visit(arc)` is called at every node
  // and returns true to stop; `prune(bound)` cuts subtrees; `tick()` returns
  // false when the shared node budget is spent.
  template <typename Visit, typename Prune, typename Tick>
  bool dfs(std::vector<std::uint32_t>& arc, Bitset cand, Visit& visit, Prune& prune, Tick& tick) const {
    while (true) {
      if (!tick()) return true;
      if (visit(arc)) return true;
      if (prune(bound(arc, cand))) return false;
      const std::size_t p = cand.find_first();
      if (p >= cand.size()) return false;
      const auto pt = static_cast<std::uint32_t>(p);
      Bitset next = include(arc, cand, pt);
      arc.push_back(pt);
      const bool stop = dfs(arc, std::move(next), visit, prune, tick);
      arc.pop_back();
      if (stop) return true;
      cand.reset(pt);
    }
  }

  const Design& design() const { return d_; }

 private:
  const Design& d_;
  CollinearityIndex index_;
};

inline unsigned frontier_depth(unsigned threads) { return threads > 1 ? 12 : 0; }

inline ArcSearchResult greedy_arc(const Design& d, std::uint64_t target, std::uint64_t seed, std::uint64_t restarts) {
  const ArcSearchEngine engine(d);
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> order(d.v());
  std::iota(order.begin(), order.end(), 0U);
  ArcSearchResult res;
  res.status = ArcStatus::budget_exhausted;
  for (std::uint64_t r = 0; r < restarts; ++r) {
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    std::vector<std::uint32_t> arc;
    Bitset cand = engine.all_points();
    for (auto p : order) {
      if (!cand.test(p)) continue;
      cand = engine.include(arc, cand, p);
      arc.push_back(p);
    }
    ++res.nodes;
    if (arc.size() > res.arc.size()) {
      std::sort(arc.begin(), arc.end());
      res.arc = arc;
    }
    if (res.arc.size() >= target) {
      res.status = ArcStatus::found;
      return res;
    }
  }
  return res;
}

}  // namespace detail

/// Searches for an arc with at least `target` points.
///
/// Greedy mode runs randomized greedy extensions with seeded restarts. Exact
/// mode runs branch-and-bound and stops at the first arc of size >= target in
/// include-first DFS order; with several threads the subtree with the lowest
/// DFS index wins, so the returned arc does not depend on the thread count.
inline ArcSearchResult find_arc(const Design& d, std::uint64_t target, const ArcSearchOptions& opts = {}) {
  detail::require_lambda_one(d);
  if (target < 3) throw InvalidInput("arc target must be at least 3");
  if (opts.mode == ArcMode::greedy) {
    const std::uint64_t restarts = opts.budget ? opts.budget : ArcSearchOptions::kDefaultGreedyRestarts;
    return detail::greedy_arc(d, target, opts.seed, restarts);
  }
  const detail::ArcSearchEngine engine(d);
  const std::uint64_t budget = opts.budget ? opts.budget : ArcSearchOptions::kDefaultNodeBudget;
  auto prune = [&](std::uint64_t b) { return b < target; };
  auto tasks = engine.frontier(detail::frontier_depth(opts.threads), prune, target);

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> exhausted{false};
  std::atomic<std::size_t> winner{tasks.size()};
  std::vector<std::vector<std::uint32_t>> found(tasks.size());

  detail::run_tasks(tasks.size(), opts.threads, [&](std::size_t t) {
    if (winner.load() < t) return;
    auto visit = [&](const std::vector<std::uint32_t>& arc) {
      if (arc.size() >= target) {
        found[t] = arc;
        return true;
      }
      return winner.load() < t;
    };
    auto tick = [&] {
      if (nodes.fetch_add(1) >= budget) {
        exhausted = true;
        return false;
      }
      return true;
    };
    auto arc = tasks[t].arc;
    engine.dfs(arc, tasks[t].cand, visit, prune, tick);
    if (!found[t].empty()) {
      std::size_t cur = winner.load();
      while (t < cur && !winner.compare_exchange_weak(cur, t)) {
      }
    }
  });

  ArcSearchResult res;
  res.nodes = nodes.load();
  if (winner.load() < tasks.size()) {
    res.status = ArcStatus::found;
    res.arc = found[winner.load()];
    std::sort(res.arc.begin(), res.arc.end());
    if (!is_arc(d, res.arc)) throw VerificationFailure("search returned a non-arc");
  } else {
    res.status = exhausted.load() ? ArcStatus::budget_exhausted : ArcStatus::infeasible;
  }
  return res;
}

/// Maximum arc size by branch-and-bound, seeded with a greedy lower bound.
/// The witness is the lexicographically least maximum arc.
inline MaxArcResult max_arc(const Design& d, std::uint64_t node_budget = 0, unsigned threads = 1,
                            std::uint64_t seed = 1) {
  detail::require_lambda_one(d);
  const std::uint64_t budget = node_budget ? node_budget : ArcSearchOptions::kDefaultNodeBudget;
  const auto greedy = detail::greedy_arc(d, d.v() + 1, seed, 64);
  const std::uint64_t floor_size = greedy.arc.size();

  const detail::ArcSearchEngine engine(d);
  std::atomic<std::uint64_t> global_best{floor_size};
  auto frontier_prune = [&](std::uint64_t b) { return b < floor_size; };
  auto tasks = engine.frontier(detail::frontier_depth(threads), frontier_prune);

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> exhausted{false};
  std::vector<std::vector<std::uint32_t>> best(tasks.size());

  detail::run_tasks(tasks.size(), threads, [&](std::size_t t) {
    std::uint64_t local = 0;
    auto visit = [&](const std::vector<std::uint32_t>& arc) {
      if (arc.size() > local && arc.size() >= floor_size) {
        local = arc.size();
        best[t] = arc;
        std::uint64_t g = global_best.load();
        while (local > g && !global_best.compare_exchange_weak(g, local)) {
        }
      }
      return false;
    };
    // Strict against the global value so every maximum-size arc survives;
    // non-strict against this subtree's own best.
    auto prune = [&](std::uint64_t b) { return b < global_best.load() || (local > 0 && b <= local); };
    auto tick = [&] {
      if (nodes.fetch_add(1) >= budget) {
        exhausted = true;
        return false;
      }
      return true;
    };
    auto arc = tasks[t].arc;
    engine.dfs(arc, tasks[t].cand, visit, prune, tick);
  });

  MaxArcResult res;
  res.nodes = nodes.load();
  for (auto& w : best) {
    if (w.empty()) continue;
    std::sort(w.begin(), w.end());
    if (w.size() > res.size || (w.size() == res.size && w < res.witness)) {
      res.size = w.size();
      res.witness = w;
    }
  }
  if (res.size == 0) {
    res.size = greedy.arc.size();
    res.witness = greedy.arc;
  }
  res.proven_optimal = !exhausted.load();
  if (!is_arc(d, res.witness)) throw VerificationFailure("search returned a non-arc");
  return res;
}

}  // namespace uniso
