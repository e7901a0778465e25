#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace fkb {

// Runs fn(replica) for replica = 0..n-1 over `workers` threads and
// returns the results indexed by replica, so any fold over the output
// is independent of scheduling and worker count.
template <class Fn>
auto run_replicas(std::int64_t n, int workers, Fn&& fn)
    -> std::vector<decltype(fn(std::int64_t{}))> {
  using Result = decltype(fn(std::int64_t{}));
  std::vector<Result> results(static_cast<std::size_t>(n));
  if (workers <= 1) {
    for (std::int64_t r = 0; r < n; ++r) results[static_cast<std::size_t>(r)] = fn(r);
    return results;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::int64_t r = next.fetch_add(1);
        if (r >= n) return;
        results[static_cast<std::size_t>(r)] = fn(r);
      }
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace fkb
