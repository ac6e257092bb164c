#pragma once

#include <cstdint>

namespace cornerlab {

// Stateless 64-bit mixer (splitmix64). Used both as a tiny PRNG for seeding
// and as the hash that derives independent substreams from (seed, tag, index).
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Fixed tags separating the independent random-number streams of a run.
namespace stream_tag {
inline constexpr std::uint64_t kRadius = 0x7261646975730001ull;
inline constexpr std::uint64_t kTheta = 0x7468657461000002ull;
inline constexpr std::uint64_t kMu = 0x6d75000000000003ull;
inline constexpr std::uint64_t kMoment = 0x6d6f6d656e740004ull;
}  // namespace stream_tag

// xoshiro256++ with substream derivation. A stream is fully determined by
// (seed, tag, index), never by thread identity, so any work partitioned by
// index reproduces bit-for-bit regardless of worker count.
class Stream {
 public:
  Stream() : Stream(0, 0, 0) {}

  Stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) noexcept {
    std::uint64_t chain = seed;
    (void)splitmix64(chain);
    chain ^= tag;
    (void)splitmix64(chain);
    chain ^= index;
    for (auto& word : s_) word = splitmix64(chain);
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0,1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

}  // namespace cornerlab
