#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <future>
#include <thread>
#include <vector>

namespace edlab {

/// Runs fn(i) for i in [0, n) on a small worker pool. The first exception is
/// rethrown after every worker has stopped.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < std::min(workers, n); ++w)
    jobs.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i; (i = next++) < n;) fn(i);
    }));
  std::exception_ptr failure;
  for (auto& j : jobs) {
    try {
      j.get();
    } catch (...) {
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace edlab
