#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace pfa::detail {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
/// (by index) is rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t err_index = n;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
        next.store(n);
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

/// Least i in [0, n) with pred(i) true. Indices above the best hit found so
/// far are skipped, so the answer is the same for every `jobs`.
template <class Pred>
std::optional<std::size_t> parallel_find_first(std::size_t n, unsigned jobs, Pred&& pred) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }
  std::atomic<std::size_t> best{n};
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n || i >= best.load()) return;
      try {
        if (pred(i)) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      } catch (...) {
        std::lock_guard lock(mu);
        if (!err) err = std::current_exception();
        next.store(n);
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  if (best.load() < n) return best.load();
  return std::nullopt;
}

}  // namespace pfa::detail
