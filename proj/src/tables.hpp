#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

#include "ballistic/perm.hpp"

namespace ballistic::detail {

inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BALLISTIC_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

// Runs body(begin, end) over [0, count) on disjoint chunks.
template <class Body>
void parallel_ranges(std::uint64_t count, Body body, std::uint64_t grain = 1u << 16) {
  const unsigned workers = worker_count();
  if (workers <= 1 || count < 2 * grain) {
    body(std::uint64_t{0}, count);
    return;
  }
  const unsigned chunks = static_cast<unsigned>(std::min<std::uint64_t>(workers, count / grain));
  std::vector<std::thread> pool;
  const std::uint64_t step = (count + chunks - 1) / chunks;
  for (unsigned c = 0; c < chunks; ++c) {
    const std::uint64_t lo = c * step;
    const std::uint64_t hi = std::min(count, lo + step);
    if (lo >= hi) break;
    pool.emplace_back([=] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

// partner[r] = rank after exchanging the contents of positions i and j
inline std::vector<std::uint32_t> position_pair_table(int n, int i, int j) {
  const std::uint64_t total = factorial(n);
  std::vector<std::uint32_t> partner(total);
  parallel_ranges(total, [&](std::uint64_t lo, std::uint64_t hi) {
    int img[32];
    for (std::uint64_t r = lo; r < hi; ++r) {
      unrank_into(n, r, img);
      std::swap(img[i - 1], img[j - 1]);
      partner[r] = static_cast<std::uint32_t>(rank_of(img, n));
    }
  });
  return partner;
}

// partner[r] = rank after exchanging the labels a and b wherever they sit
inline std::vector<std::uint32_t> label_pair_table(int n, int a, int b) {
  const std::uint64_t total = factorial(n);
  std::vector<std::uint32_t> partner(total);
  parallel_ranges(total, [&](std::uint64_t lo, std::uint64_t hi) {
    int img[32];
    for (std::uint64_t r = lo; r < hi; ++r) {
      unrank_into(n, r, img);
      for (int p = 0; p < n; ++p) {
        if (img[p] == a) img[p] = b;
        else if (img[p] == b) img[p] = a;
      }
      partner[r] = static_cast<std::uint32_t>(rank_of(img, n));
    }
  });
  return partner;
}

}  // namespace ballistic::detail
