#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace bisector_lab {

/// Runs body(worker) for worker in [0, workers) on dedicated threads and
/// rethrows the first exception. Worker 0 runs on the calling thread.
template <typename Body>
void run_workers(unsigned workers, Body&& body) {
  if (workers <= 1) {
    body(0u);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto guarded = [&](unsigned w) {
    try {
      body(w);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(guarded, w);
  guarded(0);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

/// Interleaved split of [0, count): worker w takes w, w + workers, ...
template <typename Body>
void parallel_strided(std::size_t count, unsigned workers, Body&& body) {
  if (workers == 0) workers = 1;
  run_workers(workers, [&](unsigned w) {
    for (std::size_t i = w; i < count; i += workers) body(w, i);
  });
}

}  // namespace bisector_lab
