#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cornerlab {

// Membership structure over the grid [n]^2 (1-indexed), one bitmask per row.
// Row y holds the x-coordinates present; unused high bits stay zero.
class GridSet {
 public:
  static constexpr int kMaxSide = 1 << 16;

  explicit GridSet(int n) : n_(n) {
    if (n < 1 || n > kMaxSide) throw std::invalid_argument("GridSet: side out of range");
    words_ = (n + 63) / 64;
    bits_.assign(static_cast<std::size_t>(n) * words_, 0);
  }

  int n() const { return n_; }
  int words_per_row() const { return words_; }

  void add(int x, int y) {
    check(x, y);
    bits_[word_index(x, y)] |= bit(x);
  }

  bool contains(int x, int y) const {
    if (x < 1 || x > n_ || y < 1 || y > n_) return false;
    return (bits_[word_index(x, y)] >> ((x - 1) & 63)) & 1u;
  }

  const std::uint64_t* row(int y) const { return bits_.data() + static_cast<std::size_t>(y - 1) * words_; }

  std::uint64_t size() const {
    std::uint64_t total = 0;
    for (const std::uint64_t w : bits_) total += std::popcount(w);
    return total;
  }

  // Points sorted lexicographically by (x, y).
  std::vector<std::pair<int, int>> points() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(size());
    for (int y = 1; y <= n_; ++y) {
      const std::uint64_t* words = row(y);
      for (int j = 0; j < words_; ++j) {
        std::uint64_t w = words[j];
        while (w != 0) {
          const int x = j * 64 + std::countr_zero(w) + 1;
          out.emplace_back(x, y);
          w &= w - 1;
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  GridSet transposed() const {
    GridSet out(n_);
    for (int y = 1; y <= n_; ++y)
      for (int x = 1; x <= n_; ++x)
        if (contains(x, y)) out.add(y, x);
    return out;
  }

  friend bool operator==(const GridSet& a, const GridSet& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  void check(int x, int y) const {
    if (x < 1 || x > n_ || y < 1 || y > n_)
      throw std::out_of_range("GridSet: point outside grid");
  }

  std::size_t word_index(int x, int y) const {
    return static_cast<std::size_t>(y - 1) * words_ + static_cast<std::size_t>(x - 1) / 64;
  }

  static std::uint64_t bit(int x) { return std::uint64_t{1} << ((x - 1) & 63); }

  int n_;
  int words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace cornerlab
