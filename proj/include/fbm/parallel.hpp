#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fbm {

/// Run fn(begin, end) over a contiguous split of [0, n) across `workers`
/// threads. Each index lands in exactly one shard, so results written to
/// disjoint slots are identical for any worker count. workers <= 1 runs
/// inline. The first exception thrown by a shard is rethrown in the caller.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  if (n == 0) return;
  const auto max_shards = static_cast<std::size_t>(std::max(workers, 1));
  const std::size_t shards = std::min(max_shards, n);
  if (shards <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(shards);
  std::exception_ptr error;
  std::mutex error_mutex;
  const std::size_t chunk = (n + shards - 1) / shards;
  for (std::size_t s = 0; s < shards; ++s) {
    const std::size_t begin = s * chunk;
    const std::size_t end = std::min(begin + chunk, n);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn, &error, &error_mutex] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace fbm
