#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace coocnet {

/// `requested` if set, else $COOCNET_THREADS, else 1. Always at least 1.
unsigned resolve_thread_count(std::optional<unsigned> requested = std::nullopt);

/// Runs body(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any body is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  if (count == 0) return;
  if (threads <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Fixed-size partition of [0, count) used for deterministic block reductions:
/// block boundaries depend only on `count` and `block_size`, never on threads.
struct BlockRange {
  std::size_t begin;
  std::size_t end;
};

inline std::vector<BlockRange> make_blocks(std::size_t count, std::size_t block_size) {
  std::vector<BlockRange> blocks;
  for (std::size_t b = 0; b < count; b += block_size)
    blocks.push_back({b, std::min(count, b + block_size)});
  return blocks;
}

}  // namespace coocnet
