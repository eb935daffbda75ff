#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace mixmetro {

/// Evaluates fn(0..count-1) on up to `workers` threads and returns the
/// results in index order. The first exception thrown by any call is
/// rethrown after all workers stop.
template <class Fn>
auto parallel_map(std::size_t count, unsigned workers, Fn fn)
    -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> out;
  out.reserve(count);
  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
    return out;
  }

  std::vector<std::optional<Result>> slots(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

/// Default worker count: hardware concurrency, at least 1.
inline unsigned default_workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace mixmetro
