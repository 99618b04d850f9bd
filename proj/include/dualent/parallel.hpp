// Deterministic fan-out helpers.  DUALENT_THREADS caps the worker count
// (0 or unset = hardware concurrency).

#ifndef DUALENT_PARALLEL_HPP_
#define DUALENT_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace dualent {

inline unsigned worker_count(unsigned requested = 0) {
  unsigned n = requested;
  if (n == 0)
    if (const char* env = std::getenv("DUALENT_THREADS"))
      n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  if (n == 0)
    n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

// Smallest i in [0, n) with pred(i) true, or n.  The answer does not depend
// on scheduling: workers only skip indices above the best success so far.
inline std::size_t first_success(std::size_t n, const std::function<bool(std::size_t)>& pred, unsigned threads) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i)
      if (pred(i))
        return i;
    return n;
  }
  std::atomic<std::size_t> next{0}, best{n};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n || i >= best.load())
        return;
      try {
        if (pred(i)) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error)
          error = std::current_exception();
        best.store(0);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back(work);
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
  return best.load();
}

} // namespace dualent

#endif // DUALENT_PARALLEL_HPP_
