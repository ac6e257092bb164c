#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cornerlab/grid_set.hpp"

namespace cornerlab {

namespace detail {

// Numbers in [1, m] whose predecessor has only digits 0/1 in base 3. Doubling
// such a number produces no carries, so the set is progression-free; it
// dominates the sphere candidates at small m.
inline std::vector<std::int64_t> ternary_candidate(std::int64_t m) {
  std::vector<std::int64_t> out;
  for (std::int64_t v = 1; v <= m; ++v) {
    std::int64_t x = v - 1;
    bool ok = true;
    while (x > 0) {
      if (x % 3 == 2) {
        ok = false;
        break;
      }
      x /= 3;
    }
    if (ok) out.push_back(v);
  }
  return out;
}

// Walks every k-digit vector with digits in [0, digit_count) whose base-b
// value stays <= limit, reporting (value, sum of squared digits).
template <typename Fn>
void enumerate_digit_vectors(int k, std::int64_t base, std::int64_t digit_count,
                             std::int64_t limit, Fn&& fn) {
  std::vector<std::int64_t> weight(static_cast<std::size_t>(k));
  weight[0] = 1;
  for (int i = 1; i < k; ++i) {
    weight[static_cast<std::size_t>(i)] = weight[static_cast<std::size_t>(i - 1)] * base;
    if (weight[static_cast<std::size_t>(i)] > limit) weight[static_cast<std::size_t>(i)] = limit + 1;
  }
  auto rec = [&](auto&& self, int pos, std::int64_t value, std::int64_t shell) -> void {
    if (pos == k) {
      fn(value, shell);
      return;
    }
    const std::int64_t w = weight[static_cast<std::size_t>(pos)];
    for (std::int64_t digit = 0; digit < digit_count; ++digit) {
      const std::int64_t next = value + digit * w;
      if (next > limit) break;
      self(self, pos + 1, next, shell + digit * digit);
    }
  };
  rec(rec, 0, 0, 0);
}

}  // namespace detail

// A progression-free subset of [1, m]: the best of (a) the base-3 candidate
// above and (b) sphere shells of digit vectors in base b with digits below
// floor(b/2) (no carries under doubling, so equal-shell values cannot form a
// 3-AP), scanned over k near sqrt(log2 m) and all useful bases.
inline std::vector<std::int64_t> behrend_set(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("behrend_set: m must be positive");
  std::vector<std::int64_t> best = detail::ternary_candidate(m);

  const int k0 = std::max(1, static_cast<int>(std::floor(std::sqrt(std::log2(static_cast<double>(m))))));
  const std::int64_t limit = m - 1;
  for (int k = std::max(2, k0 - 2); k <= k0 + 2; ++k) {
    const auto root = static_cast<std::int64_t>(
        std::ceil(std::pow(static_cast<double>(m), 1.0 / static_cast<double>(k))));
    const std::int64_t base_max = 2 * root + 3;
    for (std::int64_t base = 2; base <= base_max; ++base) {
      const std::int64_t digit_count = base / 2;
      if (digit_count < 1) continue;
      // Shells are bounded by k * (digit_count - 1)^2; a flat counter beats a map.
      std::vector<std::int64_t> shell_counts(
          static_cast<std::size_t>(k * (digit_count - 1) * (digit_count - 1) + 1), 0);
      detail::enumerate_digit_vectors(
          k, base, digit_count, limit,
          [&](std::int64_t, std::int64_t shell) { ++shell_counts[static_cast<std::size_t>(shell)]; });
      std::int64_t best_shell = -1;
      std::int64_t best_count = 0;
      for (std::size_t shell = 0; shell < shell_counts.size(); ++shell) {
        if (shell_counts[shell] > best_count) {
          best_shell = static_cast<std::int64_t>(shell);
          best_count = shell_counts[shell];
        }
      }
      if (best_count > static_cast<std::int64_t>(best.size())) {
        std::vector<std::int64_t> values;
        values.reserve(static_cast<std::size_t>(best_count));
        detail::enumerate_digit_vectors(k, base, digit_count, limit,
                                        [&](std::int64_t value, std::int64_t shell) {
                                          if (shell == best_shell) values.push_back(value + 1);
                                        });
        std::sort(values.begin(), values.end());
        best = std::move(values);
      }
    }
  }
  return best;
}

// {(x,y) in [n]^2 : x - y in s} for s inside [-(n-1), n-1]. If s is
// progression-free the lift is corner-free: a corner's three diagonals
// t-d, t, t+d would form a 3-AP in s. Cardinality is sum over t of n - |t|.
inline GridSet diagonal_lift(const std::vector<std::int64_t>& s, int n) {
  GridSet out(n);
  for (const std::int64_t t : s) {
    if (t <= -n || t >= n) throw std::out_of_range("diagonal_lift: element outside [-(n-1), n-1]");
    const int x_begin = static_cast<int>(std::max<std::int64_t>(1, 1 + t));
    const int x_end = static_cast<int>(std::min<std::int64_t>(n, n + t));
    for (int x = x_begin; x <= x_end; ++x) out.add(x, static_cast<int>(x - t));
  }
  return out;
}

}  // namespace cornerlab
