#pragma once

// Chunked deterministic parallelism: work is split into a fixed number of
// chunks independent of the worker count, each chunk is self-seeded, and
// results are combined in chunk order. Thread count therefore never changes
// any output.

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace chir {

template <class Fn>
void run_chunks(int nchunks, int threads, Fn&& fn) {
  if (threads <= 1) {
    for (int c = 0; c < nchunks; ++c) fn(c);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int c = next.fetch_add(1);
      if (c >= nchunks) return;
      fn(c);
    }
  };
  std::vector<std::thread> pool;
  int nt = std::min(threads, nchunks);
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace chir
