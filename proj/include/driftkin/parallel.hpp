#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace driftkin {

/// Calls fn(chunk, begin, end) for `chunks` contiguous ranges of [0, n),
/// spread over at most `threads` workers. Chunk boundaries depend only on n
/// and `chunks`, never on the thread count.
template <typename Fn>
void parallel_chunks(std::size_t n, int chunks, int threads, Fn&& fn) {
  chunks = std::max(1, chunks);
  auto bounds = [&](int c) { return n * static_cast<std::size_t>(c) / chunks; };
  threads = std::clamp(threads, 1, chunks);
  if (threads == 1) {
    for (int c = 0; c < chunks; ++c) fn(c, bounds(c), bounds(c + 1));
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int c = t; c < chunks; c += threads) fn(c, bounds(c), bounds(c + 1));
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace driftkin
