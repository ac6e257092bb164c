#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "cornerlab/grid_set.hpp"
#include "cornerlab/parallel.hpp"

namespace cornerlab {

// A corner: (x,y), (x+d,y), (x,y+d) with d != 0 (d may be negative).
struct CornerWitness {
  int x = 0;
  int y = 0;
  int d = 0;

  friend bool operator==(const CornerWitness&, const CornerWitness&) = default;
};

// A three-term arithmetic progression first, first+step, first+2*step.
struct ApWitness {
  std::int64_t first = 0;
  std::int64_t step = 0;

  friend bool operator==(const ApWitness&, const ApWitness&) = default;
};

namespace detail {

// Word j of the row shifted so that bit i of the result is bit i+d of `words`
// (bits outside [0, n) read as zero; high bits above n are zero by invariant).
inline std::uint64_t shifted_row_word(const std::uint64_t* words, int word_count, int j, int d) {
  if (d > 0) {
    const int q = d >> 6, r = d & 63;
    const std::uint64_t lo = (j + q < word_count) ? words[j + q] : 0;
    if (r == 0) return lo;
    const std::uint64_t hi = (j + q + 1 < word_count) ? words[j + q + 1] : 0;
    return (lo >> r) | (hi << (64 - r));
  }
  const int s = -d;
  const int q = s >> 6, r = s & 63;
  const std::uint64_t lo = (j - q >= 0) ? words[j - q] : 0;
  if (r == 0) return lo;
  const std::uint64_t hi = (j - q - 1 >= 0) ? words[j - q - 1] : 0;
  return (lo << r) | (hi >> (64 - r));
}

// Smallest x with x and x+d in row `a` and x in row `c`, or 0 if none.
inline int first_corner_x(const std::uint64_t* a, const std::uint64_t* c, int word_count, int d) {
  for (int j = 0; j < word_count; ++j) {
    const std::uint64_t m = a[j] & c[j] & shifted_row_word(a, word_count, j, d);
    if (m != 0) return j * 64 + std::countr_zero(m) + 1;
  }
  return 0;
}

// Earliest witness in scan order (y ascending, then d ascending, then x
// ascending) among rows y in [y_begin, y_end].
inline std::optional<CornerWitness> scan_rows(const GridSet& s, int y_begin, int y_end) {
  const int n = s.n();
  const int words = s.words_per_row();
  for (int y = y_begin; y <= y_end; ++y) {
    const std::uint64_t* base = s.row(y);
    for (int d = 1 - y; d <= n - y; ++d) {
      if (d == 0) continue;
      const int x = first_corner_x(base, s.row(y + d), words, d);
      if (x != 0) return CornerWitness{x, y, d};
    }
  }
  return std::nullopt;
}

}  // namespace detail

// First corner in scan order, or nothing if the set is corner-free.
// Examines every d with 1 <= |d| <= n-1 via word-parallel row-pair
// intersections.
inline std::optional<CornerWitness> find_corner(const GridSet& s) {
  const int n = s.n();
  const int threads = thread_count();
  if (n < 256 || threads <= 1) return detail::scan_rows(s, 1, n);

  const int chunk_rows = 64;
  const std::size_t chunks = static_cast<std::size_t>((n + chunk_rows - 1) / chunk_rows);
  std::vector<std::optional<CornerWitness>> found(chunks);
  std::atomic<std::size_t> first_hit{chunks};
  parallel_for_index(chunks, [&](std::size_t c) {
    if (c > first_hit.load(std::memory_order_relaxed)) return;
    const int y_begin = static_cast<int>(c) * chunk_rows + 1;
    const int y_end = std::min(n, y_begin + chunk_rows - 1);
    found[c] = detail::scan_rows(s, y_begin, y_end);
    if (found[c]) {
      std::size_t cur = first_hit.load(std::memory_order_relaxed);
      while (c < cur && !first_hit.compare_exchange_weak(cur, c, std::memory_order_relaxed)) {
      }
    }
  });
  for (const auto& w : found)
    if (w) return w;
  return std::nullopt;
}

inline bool is_corner_free(const GridSet& s) { return !find_corner(s).has_value(); }

// All distinct step values d (positive and negative) for which the set
// contains at least one corner.
inline std::vector<int> corner_steps(const GridSet& s) {
  const int n = s.n();
  const int words = s.words_per_row();
  std::set<int> steps;
  for (int y = 1; y <= n; ++y) {
    const std::uint64_t* base = s.row(y);
    for (int d = 1 - y; d <= n - y; ++d) {
      if (d == 0 || steps.contains(d)) continue;
      if (detail::first_corner_x(base, s.row(y + d), words, d) != 0) steps.insert(d);
    }
  }
  return {steps.begin(), steps.end()};
}

// First 3-AP (first ascending, then step ascending) in a sorted integer set.
inline std::optional<ApWitness> find_3ap(const std::vector<std::int64_t>& sorted_xs) {
  const std::size_t n = sorted_xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::int64_t step = sorted_xs[j] - sorted_xs[i];
      if (step == 0) continue;
      const std::int64_t third = sorted_xs[j] + step;
      if (std::binary_search(sorted_xs.begin() + static_cast<std::ptrdiff_t>(j) + 1,
                             sorted_xs.end(), third))
        return ApWitness{sorted_xs[i], step};
    }
  }
  return std::nullopt;
}

}  // namespace cornerlab
