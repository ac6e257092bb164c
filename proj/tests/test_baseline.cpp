#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "cornerlab/baseline.hpp"
#include "cornerlab/rng.hpp"
#include "cornerlab/verify.hpp"

using namespace cornerlab;

TEST_CASE("behrend_set on the named small cases") {
  CHECK(behrend_set(1) == std::vector<std::int64_t>{1});

  const auto three = behrend_set(3);
  CHECK(three.size() == 2);
  CHECK_FALSE(find_3ap(three).has_value());

  const auto twenty = behrend_set(20);
  CHECK(twenty.size() >= 6);
  CHECK_FALSE(find_3ap(twenty).has_value());

  CHECK_THROWS_AS(behrend_set(0), std::invalid_argument);
}

TEST_CASE("behrend_set output is sorted, in range, progression-free") {
  for (std::int64_t m = 1; m <= 128; ++m) {
    const auto s = behrend_set(m);
    REQUIRE_FALSE(s.empty());
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    CHECK(s.front() >= 1);
    CHECK(s.back() <= m);
    REQUIRE_FALSE(find_3ap(s).has_value());
  }
}

TEST_CASE("behrend_set sizes do not collapse at larger m") {
  // Frozen from runs of this implementation; regression floor, not optimality.
  CHECK(behrend_set(64).size() >= 16);
  CHECK(behrend_set(512).size() >= 64);
}

TEST_CASE("diagonal_lift geometry") {
  SECTION("single diagonal") {
    const GridSet lift = diagonal_lift({0}, 3);
    CHECK(lift.size() == 3);
    CHECK(lift.contains(1, 1));
    CHECK(lift.contains(2, 2));
    CHECK(lift.contains(3, 3));
    CHECK(is_corner_free(lift));
  }

  SECTION("a 3-AP in the diagonals produces a corner") {
    const GridSet lift = diagonal_lift({1, 2, 3}, 4);
    CHECK(find_corner(lift).has_value());
  }

  SECTION("cardinality is the sum of diagonal lengths") {
    Stream rng(201, 0, 0);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 5 + static_cast<int>(rng.uniform01() * 20);
      std::vector<std::int64_t> s;
      for (std::int64_t t = -(n - 1); t <= n - 1; ++t)
        if (rng.uniform01() < 0.3) s.push_back(t);
      const GridSet lift = diagonal_lift(s, n);
      std::int64_t expect = 0;
      for (const std::int64_t t : s) expect += n - std::llabs(t);
      CHECK(lift.size() == static_cast<std::uint64_t>(expect));
    }
  }

  SECTION("out-of-range elements are rejected") {
    CHECK_THROWS_AS(diagonal_lift({5}, 5), std::out_of_range);
    CHECK_THROWS_AS(diagonal_lift({-7}, 5), std::out_of_range);
  }
}

TEST_CASE("lifted behrend sets are corner-free") {
  for (const int n : {16, 64}) {
    auto s = behrend_set(2 * static_cast<std::int64_t>(n) - 1);
    for (auto& t : s) t -= n;
    const GridSet lift = diagonal_lift(s, n);
    CHECK(lift.size() > 0);
    CHECK(is_corner_free(lift));
  }
}
