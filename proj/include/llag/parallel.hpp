#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "llag/errors.hpp"

namespace llag {

/// Default worker count: the hardware concurrency, at least 1.
inline unsigned default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

/// Calls body(i) for i in [0, count) on up to `workers` threads. Work items
/// are claimed dynamically, so results must be written to per-index slots.
/// If any item throws, the exception of the lowest failing index is
/// rethrown as a ReplicateError after all workers finish.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const ReplicateError&) {
      throw;
    } catch (const std::exception& e) {
      throw ReplicateError(i, e.what());
    } catch (...) {
      throw ReplicateError(i, "unknown error");
    }
  }
}

}  // namespace llag
