#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hcm {

/// Number of workers used by the parallel kernels; 0 means hardware concurrency.
void set_worker_count(std::size_t workers);
std::size_t worker_count();

/// Calls fn(worker, i) for every i in [0, count). Indices are handed out
/// dynamically; `worker` is stable within one thread so callers can keep
/// per-worker scratch space. Output must depend only on i.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(std::size_t{0}, i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(w, i);
        } catch (...) {
          errors[w] = std::current_exception();
          next.store(count);
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace hcm
