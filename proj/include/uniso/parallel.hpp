#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace uniso::detail {

/// Runs job(0..count-1), pulling indices from a shared counter. Callers make
/// their merges order-independent.
template <typename Job>
void run_tasks(std::size_t count, unsigned threads, Job job) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) job(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace uniso::detail
