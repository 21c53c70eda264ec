// Worker count from TORIC_THREADS (default 1) and a static-partition loop.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace toric {

inline std::size_t thread_count() {
  const char* env = std::getenv("TORIC_THREADS");
  if (!env) return 1;
  try {
    const long n = std::stol(env);
    return n >= 1 ? static_cast<std::size_t>(n) : 1;
  } catch (...) {
    return 1;
  }
}

/// Runs body(i) for i in [0, n). Each index is handled by exactly one worker,
/// so writes to per-index slots need no locking.
template <typename Body>
void parallel_for(std::size_t n, const Body& body) {
  const std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace toric
