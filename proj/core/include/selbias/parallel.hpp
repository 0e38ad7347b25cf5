#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace selbias {

// Runs body(worker, begin, end) over [0, count) split into `workers`
// contiguous chunks. The first exception thrown by any chunk is rethrown.
// Callers store per-index results and reduce in index order, so outputs do
// not depend on the worker count.
inline void parallel_chunks(std::size_t count, unsigned workers,
                            const std::function<void(unsigned, std::size_t, std::size_t)>& body) {
  if (workers <= 1 || count <= 1) {
    body(0, 0, count);
    return;
  }
  const std::size_t n_workers = std::min<std::size_t>(workers, count);
  std::vector<std::thread> threads;
  threads.reserve(n_workers);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (std::size_t w = 0; w < n_workers; ++w) {
    const std::size_t begin = count * w / n_workers;
    const std::size_t end = count * (w + 1) / n_workers;
    threads.emplace_back([&, w, begin, end] {
      try {
        body(static_cast<unsigned>(w), begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Worker count from SELBIAS_WORKERS, falling back to `fallback`.
unsigned default_workers(unsigned fallback = 1);

}  // namespace selbias
