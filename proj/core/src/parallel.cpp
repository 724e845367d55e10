#include "isores/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace isores {

namespace {
std::atomic<int> g_override{0};
thread_local bool t_inside = false;  // nested parallel_for runs serially

int env_threads() {
  const char* s = std::getenv("ISORES_THREADS");
  if (!s) return 0;
  try {
    return std::max(0, std::stoi(s));
  } catch (...) {
    return 0;
  }
}
}  // namespace

int thread_count() {
  if (int o = g_override.load(); o > 0) return o;
  if (int e = env_threads(); e > 0) return e;
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_thread_count(int n) { g_override.store(std::max(0, n)); }

void parallel_for(std::size_t n, std::size_t chunk,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  chunk = std::max<std::size_t>(1, chunk);
  const std::size_t chunks = chunk_count(n, chunk);
  const auto workers = static_cast<std::size_t>(
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), chunks));
  if (workers <= 1 || t_inside) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    const bool was_inside = t_inside;
    t_inside = true;
    struct Restore {
      bool v;
      ~Restore() { t_inside = v; }
    } restore{was_inside};
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        fn(c * chunk, std::min(n, (c + 1) * chunk));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(chunks);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace isores
