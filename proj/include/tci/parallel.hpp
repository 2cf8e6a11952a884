// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace tci {

// Deterministic chunked parallel-for: the index range is split into chunks of
// a fixed size independent of the worker count, workers pull chunks from an
// atomic counter, and any reduction is done by combining per-chunk results in
// chunk order afterwards. Output is therefore byte-identical for any number
// of threads.
inline constexpr int kChunkSize = 1024;

inline int chunk_count(int n) { return n <= 0 ? 0 : (n + kChunkSize - 1) / kChunkSize; }

// fn(chunk_index, begin, end)
inline void parallel_chunks(int n, int threads,
                            const std::function<void(int, int, int)>& fn) {
  const int nchunks = chunk_count(n);
  if (nchunks == 0) return;
  threads = std::max(1, threads);
  if (threads == 1 || nchunks == 1) {
    for (int c = 0; c < nchunks; ++c)
      fn(c, c * kChunkSize, std::min(n, (c + 1) * kChunkSize));
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int c = next.fetch_add(1);
      if (c >= nchunks) return;
      fn(c, c * kChunkSize, std::min(n, (c + 1) * kChunkSize));
    }
  };
  std::vector<std::thread> pool;
  const int nw = std::min(threads, nchunks);
  pool.reserve(static_cast<size_t>(nw - 1));
  for (int i = 1; i < nw; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

// Order-fixed sum of per-chunk partials accumulated by `fn(chunk, begin, end)
// -> double`.
inline double parallel_sum(int n, int threads,
                           const std::function<double(int, int, int)>& fn) {
  const int nchunks = chunk_count(n);
  std::vector<double> partial(static_cast<size_t>(nchunks), 0.0);
  parallel_chunks(n, threads,
                  [&](int c, int b, int e) { partial[static_cast<size_t>(c)] = fn(c, b, e); });
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

}  // namespace tci
