#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "cornerlab/rng.hpp"
#include "cornerlab/set_file.hpp"
#include "cornerlab/sweep.hpp"

using namespace cornerlab;

namespace {

SetFile sample_construction_file() {
  SetFile f;
  f.n = 16;
  f.d = 2;
  ConstructionBlock c;
  c.r = 0.6076698900821894;
  c.delta = 0.1;
  c.delta_coeff = 0.1;
  c.theta = {0.10549888811182606, 0.24756970092833608};
  c.mu = {{0.5798284585792865, 0.8053465628675415}, {0.18467678031605972, 0.915192258827146}};
  c.seed = 12345;
  c.mu_trials = 8;
  f.construction = c;
  f.points = {{1, 3}, {2, 5}, {7, 7}, {16, 1}};
  return f;
}

}  // namespace

TEST_CASE("fmt17 round-trips doubles exactly") {
  Stream rng(301, 0, 0);
  for (int i = 0; i < 20'000; ++i) {
    const double v = (rng.uniform01() - 0.5) * std::pow(10.0, rng.uniform01() * 12.0 - 6.0);
    CHECK(std::stod(fmt17(v)) == v);
  }
}

TEST_CASE("set file serialization round-trips") {
  const SetFile f = sample_construction_file();
  const std::string text = f.serialize();
  const SetFile back = SetFile::parse(text);
  CHECK(back == f);
  CHECK(back.serialize() == text);

  SECTION("baseline block variant") {
    SetFile b;
    b.n = 8;
    b.d = 0;
    b.baseline = BaselineBlock{"behrend-diagonal", 15, -8};
    b.points = {{1, 1}, {3, 3}};
    const SetFile back2 = SetFile::parse(b.serialize());
    CHECK(back2 == b);
  }

  SECTION("empty point list") {
    SetFile e;
    e.n = 4;
    e.d = 0;
    e.baseline = BaselineBlock{"behrend-diagonal", 7, -4};
    CHECK(SetFile::parse(e.serialize()) == e);
  }
}

TEST_CASE("set file validation rejects malformed content") {
  const SetFile f = sample_construction_file();

  SECTION("truncated input") {
    const std::string text = f.serialize();
    CHECK_THROWS_AS(SetFile::parse(text.substr(0, text.size() / 2)), ParseError);
  }

  SECTION("wrong format tag") {
    std::string text = f.serialize();
    const auto pos = text.find("cornerfree-set-v1");
    text.replace(pos, 17, "cornerfree-set-v9");
    CHECK_THROWS_AS(SetFile::parse(text), ParseError);
  }

  SECTION("unsorted points") {
    SetFile bad = f;
    std::swap(bad.points[0], bad.points[1]);
    CHECK_THROWS_AS(SetFile::parse(bad.serialize()), ParseError);
  }

  SECTION("duplicate points") {
    SetFile bad = f;
    bad.points = {{1, 3}, {1, 3}};
    CHECK_THROWS_AS(SetFile::parse(bad.serialize()), ParseError);
  }

  SECTION("point outside the grid") {
    SetFile bad = f;
    bad.points = {{1, 3}, {17, 2}};
    CHECK_THROWS_AS(SetFile::parse(bad.serialize()), ParseError);
  }

  SECTION("both provenance blocks") {
    SetFile bad = f;
    bad.baseline = BaselineBlock{"behrend-diagonal", 3, -2};
    CHECK_THROWS_AS(bad.validate(), ParseError);
  }

  SECTION("theta length mismatch") {
    SetFile bad = f;
    bad.construction->theta.push_back(0.5);
    CHECK_THROWS_AS(SetFile::parse(bad.serialize()), ParseError);
  }
}

TEST_CASE("set file to_grid reproduces the points") {
  const SetFile f = sample_construction_file();
  const GridSet g = f.to_grid();
  CHECK(g.size() == f.points.size());
  for (const auto& [x, y] : f.points) CHECK(g.contains(x, y));
}

TEST_CASE("sweep bound column formula") {
  CHECK(size_bound(64, 1) == Catch::Approx(0.75).margin(1e-12));
  // sqrt(2) * (3/4)^2 * n: direct evaluation at d=2.
  CHECK(size_bound(100, 2) == Catch::Approx(std::sqrt(2.0) * 0.5625 * 100.0).epsilon(1e-12));
  const double expect =
      std::sqrt(6.0) * std::pow(0.75, 6) * std::pow(1024.0, 2.0 - 2.0 / 6.0);
  CHECK(size_bound(1024, 6) == Catch::Approx(expect).epsilon(1e-12));
}

TEST_CASE("sweep rows render canonically") {
  SweepRow row;
  row.n = 64;
  row.d = 2;
  row.r = 0.5;
  row.delta = 0.125;
  row.size = 17;
  row.density = 17.0 / 4096.0;
  row.bound = size_bound(64, 2);
  row.ratio = row.size / row.bound;
  row.seed = 3;
  row.verified = true;
  const std::string line = to_csv_row(row);
  CHECK(line.substr(0, 5) == "64,2,");
  CHECK(line.find(",17,") != std::string::npos);
  CHECK(line.find(",3,true") != std::string::npos);
  CHECK(std::string(kSweepHeader) == "n,d,r,delta,size,density,bound,ratio,seed,verified");
}
