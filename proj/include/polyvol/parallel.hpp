#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace polyvol {

/// Worker count to use: explicit request, else POLYVOL_THREADS, else the
/// hardware count. Always at least 1.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("POLYVOL_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs body(i) for i in [0, count) on `threads` workers. Tasks are assigned
/// by static striding, so each index always computes the same work item and
/// results written to per-index slots are identical for any thread count.
inline void parallel_for(long count, int threads, const std::function<void(long)>& body) {
  if (count <= 0) return;
  if (threads <= 1 || count == 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  int workers = threads < count ? threads : static_cast<int>(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (long i = w; i < count; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace polyvol
