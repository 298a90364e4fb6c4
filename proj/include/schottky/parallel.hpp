#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace schottky {

// Default worker count: SCHOTTKY_THREADS env var, else 1.
inline int default_thread_count() {
  if (const char* env = std::getenv("SCHOTTKY_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

// Runs fn(chunk_index, begin, end) over [0, n) split into fixed contiguous
// chunks. Chunk boundaries depend only on (n, threads), never on timing, so
// per-chunk results can be reduced in chunk order for value-reproducible
// parallel runs. threads <= 1 executes inline.
inline void for_chunks(std::size_t n, int threads,
                       const std::function<void(int, std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (threads <= 1) {
    fn(0, 0, n);
    return;
  }
  std::size_t nchunks = static_cast<std::size_t>(threads);
  if (nchunks > n) nchunks = n;
  std::size_t per = (n + nchunks - 1) / nchunks;
  std::vector<std::thread> pool;
  pool.reserve(nchunks);
  for (std::size_t c = 0; c < nchunks; ++c) {
    std::size_t b = c * per;
    std::size_t e = std::min(n, b + per);
    if (b >= e) break;
    pool.emplace_back(fn, static_cast<int>(c), b, e);
  }
  for (auto& t : pool) t.join();
}

}  // namespace schottky
