#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "uniso/uniso.hpp"

namespace testing_support {

using namespace uniso;

inline Design fano() {
  return Design(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}}, {{"kind", "fano"}});
}

// Plain subset enumeration with neighborhoods recomputed from the block
// lists. Returns the minimum ratio and the minimizers' unified id lists.
struct NaiveIso {
  std::int64_t nb = 0, s = 0;
  std::vector<std::uint32_t> witness;
};

inline NaiveIso naive_iso(const Design& d, bool incidence) {
  const std::uint32_t v = d.v(), b = d.b(), nv = v + b;
  auto adjacent = [&](std::uint32_t p, std::uint32_t j) {
    const auto& blk = d.block(j);
    const bool in = std::find(blk.begin(), blk.end(), p) != blk.end();
    return incidence ? in : !in;
  };
  NaiveIso best;
  bool have = false;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << nv); ++mask) {
    const auto s = static_cast<std::int64_t>(__builtin_popcountll(mask));
    if (2 * s > nv) continue;
    std::int64_t nb = 0;
    for (std::uint32_t u = 0; u < nv; ++u) {
      if ((mask >> u) & 1U) continue;
      bool hit = false;
      for (std::uint32_t w = 0; w < nv && !hit; ++w) {
        if (!((mask >> w) & 1U)) continue;
        if (u < v && w >= v) hit = adjacent(u, w - v);
        if (u >= v && w < v) hit = adjacent(w, u - v);
      }
      nb += hit;
    }
    std::vector<std::uint32_t> ids;
    for (std::uint32_t u = 0; u < nv; ++u)
      if ((mask >> u) & 1U) ids.push_back(u);
    const bool better = !have || nb * best.s < best.nb * s ||
                        (nb * best.s == best.nb * s && (s < best.s || (s == best.s && ids < best.witness)));
    if (better) {
      best = {nb, s, ids};
      have = true;
    }
  }
  return best;
}

inline Bitset random_subset(std::mt19937_64& rng, std::size_t n, double p) {
  Bitset out(n);
  std::bernoulli_distribution coin(p);
  for (std::size_t i = 0; i < n; ++i)
    if (coin(rng)) out.set(i);
  return out;
}

}  // namespace testing_support
