#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace theta_lab {

namespace detail {
inline std::atomic<unsigned>& thread_setting() {
  static std::atomic<unsigned> value{0};
  return value;
}
}  // namespace detail

// 0 means "use THETA_LAB_THREADS, else all cores".
inline void set_thread_count(unsigned n) { detail::thread_setting() = n; }

inline unsigned thread_count() {
  if (unsigned n = detail::thread_setting(); n > 0) return n;
  if (const char* env = std::getenv("THETA_LAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, n). Work is split into contiguous blocks; the
// first exception thrown by any block is rethrown on the caller.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = n * w / workers;
    const std::size_t hi = n * (w + 1) / workers;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Running maximum that keeps the lowest index on ties, so merging partial
// results in any order gives the same answer.
template <typename Payload>
struct ArgMax {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t index = static_cast<std::size_t>(-1);
  Payload payload{};

  void offer(double v, std::size_t i, const Payload& p) {
    if (v > value || (v == value && i < index)) {
      value = v;
      index = i;
      payload = p;
    }
  }
  void merge(const ArgMax& other) {
    if (other.index != static_cast<std::size_t>(-1)) offer(other.value, other.index, other.payload);
  }
  bool empty() const { return index == static_cast<std::size_t>(-1); }
};

// Evaluates f(i) -> optional<pair<value, payload>> for i in [0, n) and returns
// the deterministic argmax. `f` returning nullopt skips the index.
template <typename Payload, typename F>
ArgMax<Payload> parallel_argmax(std::size_t n, F&& f) {
  const std::size_t blocks = std::min<std::size_t>(std::max<std::size_t>(thread_count(), 1) * 4, std::max<std::size_t>(n, 1));
  std::vector<ArgMax<Payload>> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t lo = n * b / blocks;
    const std::size_t hi = n * (b + 1) / blocks;
    for (std::size_t i = lo; i < hi; ++i) {
      if (auto r = f(i)) partial[b].offer(r->first, i, r->second);
    }
  });
  ArgMax<Payload> total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace theta_lab
