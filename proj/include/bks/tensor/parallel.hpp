#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace bks {

namespace detail {
inline std::atomic<std::size_t>& thread_setting() {
  static std::atomic<std::size_t> n{[] {
    const char* env = std::getenv("BKS_NUM_THREADS");
    if (env == nullptr) return std::size_t{1};
    try {
      const long v = std::stol(env);
      return v > 0 ? static_cast<std::size_t>(v) : std::size_t{1};
    } catch (...) {
      return std::size_t{1};
    }
  }()};
  return n;
}
}  // namespace detail

// Worker threads used by the sparse kernels. Initialized from BKS_NUM_THREADS.
inline std::size_t thread_count() { return detail::thread_setting().load(); }
inline void set_thread_count(std::size_t n) { detail::thread_setting().store(std::max<std::size_t>(n, 1)); }

// Splits [0, n) into at most thread_count() ranges whose boundaries never
// separate two positions with the same key, then runs fn(begin, end) on each.
// Ranges touch disjoint keys, so kernels writing per-key output need no locks.
template <class KeyFn, class Fn>
void for_each_key_range(std::size_t n, KeyFn key, Fn fn) {
  const std::size_t workers = std::min(thread_count(), std::max<std::size_t>(n / 4096, 1));
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::size_t> cuts{0};
  for (std::size_t w = 1; w < workers; ++w) {
    std::size_t c = std::max(n * w / workers, cuts.back());
    while (c > 0 && c < n && key(c) == key(c - 1)) ++c;
    cuts.push_back(c);
  }
  cuts.push_back(n);
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w + 1 < cuts.size(); ++w) {
    if (cuts[w] < cuts[w + 1]) pool.emplace_back([&, b = cuts[w], e = cuts[w + 1]] { fn(b, e); });
  }
}

}  // namespace bks
