#pragma once

#include <cstddef>
#include <functional>

namespace isores {

// Worker count: ISORES_THREADS if set and positive, else hardware concurrency.
int thread_count();
void set_thread_count(int n);  // 0 restores the default

// Runs fn(begin, end) over fixed-size chunks of [0, n). Chunk boundaries do not
// depend on the thread count, so per-chunk reductions combined in chunk order
// are reproducible.
void parallel_for(std::size_t n, std::size_t chunk,
                  const std::function<void(std::size_t, std::size_t)>& fn);

inline std::size_t chunk_count(std::size_t n, std::size_t chunk) {
  return (n + chunk - 1) / chunk;
}

}  // namespace isores
