#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cornerlab/commands.hpp"

using namespace cornerlab;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string output;
};

const char* cli_path() {
  const char* p = std::getenv("CORNERLAB_CLI");
  REQUIRE(p != nullptr);
  return p;
}

fs::path work_dir() {
  const fs::path dir = fs::current_path() / "test_cli_work";
  fs::create_directories(dir);
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path out = work_dir() / "last_output.txt";
  const std::string cmd =
      std::string("\"") + cli_path() + "\" " + args + " > \"" + out.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("build then verify round-trip") {
  const fs::path file = work_dir() / "build64.json";
  const auto built = run_cli("build --n 64 --d 2 --seed 1 -o \"" + file.string() + "\"");
  REQUIRE(built.code == 0);
  CHECK(built.output.find("built n=64 d=2") != std::string::npos);

  const auto verified = run_cli("verify \"" + file.string() + "\"");
  CHECK(verified.code == 0);
  CHECK(verified.output.find("corner-free") != std::string::npos);

  const SetFile parsed = SetFile::parse(slurp(file));
  CHECK(parsed.n == 64);
  CHECK(parsed.d == 2);
  CHECK(parsed.construction.has_value());
  CHECK(!parsed.points.empty());
}

TEST_CASE("verify reports a witness with exit 1") {
  const fs::path file = work_dir() / "corner.json";
  SetFile bad;
  bad.n = 2;
  bad.d = 0;
  bad.baseline = BaselineBlock{"behrend-diagonal", 3, -2};
  bad.points = {{1, 1}, {1, 2}, {2, 1}};
  std::ofstream(file) << bad.serialize();

  const auto r = run_cli("verify \"" + file.string() + "\"");
  CHECK(r.code == 1);
  CHECK(r.output.find("corner at x=1 y=1 d=1") != std::string::npos);
}

TEST_CASE("verify rejects malformed files with exit 2") {
  const fs::path file = work_dir() / "truncated.json";
  std::ofstream(file) << "{\"format\": \"cornerfree-set-v1\", \"n\": 4";
  const auto r = run_cli("verify \"" + file.string() + "\"");
  CHECK(r.code == 2);
  CHECK(r.output.find("error") != std::string::npos);

  const auto missing = run_cli("verify \"" + (work_dir() / "nope.json").string() + "\"");
  CHECK(missing.code == 2);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("build --n 0 -o out.json").code == 2);
  CHECK(run_cli("build -o out.json").code == 2);
  CHECK(run_cli("estimate --d 1 --delta -1").code == 2);
  CHECK(run_cli("estimate --d 1").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("estimate prints the volume report") {
  const auto r = run_cli("estimate --d 1 --delta 0.5 --mode exact");
  REQUIRE(r.code == 0);
  CHECK(r.output.find("\"r\": 0.5") != std::string::npos);
  CHECK(r.output.find("\"conditional_mass\": 0.6666666") != std::string::npos);
  CHECK(r.output.find("\"volume\": 0.5") != std::string::npos);
}

TEST_CASE("delta coefficient auto-halving still succeeds") {
  const fs::path file = work_dir() / "halved.json";
  std::ostringstream out, err;
  BuildOptions opts;
  opts.n = 8;
  opts.d = 1;
  opts.delta_coeff = 4.0;
  opts.seed = 2;
  std::optional<BuildResult> result;
  const int code = cmd_build(opts, file.string(), out, err, &result);
  REQUIRE(code == 0);
  REQUIRE(result.has_value());
  CHECK(result->halvings > 0);
  CHECK(result->final_delta_coeff < 4.0);
  CHECK(is_corner_free(result->set));
  CHECK(SetFile::parse(slurp(file)).construction->delta_coeff == result->final_delta_coeff);
}

TEST_CASE("sweep emits verified rows and a stable header") {
  const fs::path file = work_dir() / "sweep.csv";
  const auto r = run_cli("sweep --n-list 16,24 --d 2 --seeds 2 -o \"" + file.string() + "\"");
  REQUIRE(r.code == 0);
  const std::string csv = slurp(file);
  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == kSweepHeader);
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    CHECK(line.find(",true") != std::string::npos);
  }
  CHECK(rows == 4);
}

namespace {

struct CsvRow {
  int n = 0;
  int d = 0;
  double r = 0.0, delta = 0.0;
  std::uint64_t size = 0;
  double density = 0.0, bound = 0.0, ratio = 0.0;
  std::uint64_t seed = 0;
  std::string verified;
};

std::vector<CsvRow> parse_csv_rows(const std::string& csv) {
  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  REQUIRE(line == kSweepHeader);
  std::vector<CsvRow> rows;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    CsvRow row;
    auto next = [&] {
      REQUIRE(std::getline(fields, field, ','));
      return field;
    };
    row.n = std::stoi(next());
    row.d = std::stoi(next());
    row.r = std::stod(next());
    row.delta = std::stod(next());
    row.size = std::stoull(next());
    row.density = std::stod(next());
    row.bound = std::stod(next());
    row.ratio = std::stod(next());
    row.seed = std::stoull(next());
    row.verified = next();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("sweep columns are internally consistent and clear the ratio floor") {
  const fs::path file = work_dir() / "sweep_ratio.csv";
  const auto r = run_cli("sweep --n-list 256 --seeds 2 -o \"" + file.string() + "\"");
  REQUIRE(r.code == 0);
  const auto rows = parse_csv_rows(slurp(file));
  REQUIRE(rows.size() == 2);
  for (const CsvRow& row : rows) {
    CHECK(row.n == 256);
    CHECK(row.d == default_dimension(256));
    CHECK(row.verified == "true");
    CHECK(std::fabs(row.bound - size_bound(row.n, row.d)) <= 1e-9);
    CHECK(row.density ==
          Catch::Approx(static_cast<double>(row.size) / (256.0 * 256.0)).epsilon(1e-12));
    CHECK(row.ratio == Catch::Approx(static_cast<double>(row.size) / row.bound).epsilon(1e-12));
    // Empirical regression floor from this implementation's own runs.
    CHECK(row.ratio > 0.05);
  }
}

TEST_CASE("one-dimensional sweep degenerates gracefully") {
  const fs::path file = work_dir() / "sweep_d1.csv";
  const auto r = run_cli("sweep --n-list 64 --d 1 --seeds 1 -o \"" + file.string() + "\"");
  REQUIRE(r.code == 0);
  const auto rows = parse_csv_rows(slurp(file));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].d == 1);
  CHECK(rows[0].verified == "true");
  CHECK(rows[0].bound == Catch::Approx(0.75).margin(1e-12));
}

TEST_CASE("sweep with baseline reports densities side by side") {
  const auto r = run_cli("sweep --n-list 16 --d 2 --seeds 1 --with-baseline -o \"" +
                         (work_dir() / "sweep_base.csv").string() + "\"");
  REQUIRE(r.code == 0);
  CHECK(r.output.find("baseline n=16") != std::string::npos);
  CHECK(r.output.find("baseline_density=") != std::string::npos);
  CHECK(r.output.find("torus_density=") != std::string::npos);
}

TEST_CASE("baseline command writes a verified file") {
  const fs::path file = work_dir() / "baseline.json";
  const auto r = run_cli("baseline --n 64 -o \"" + file.string() + "\"");
  REQUIRE(r.code == 0);
  const SetFile parsed = SetFile::parse(slurp(file));
  CHECK(parsed.baseline.has_value());
  CHECK(parsed.baseline->kind == "behrend-diagonal");
  CHECK(is_corner_free(parsed.to_grid()));

  const fs::path tiny = work_dir() / "baseline1.json";
  REQUIRE(run_cli("baseline --n 1 -o \"" + tiny.string() + "\"").code == 0);
  const SetFile one = SetFile::parse(slurp(tiny));
  REQUIRE(one.points.size() == 1);
  CHECK(one.points[0] == std::pair<int, int>{1, 1});
}

TEST_CASE("repeated builds are byte-identical") {
  const fs::path a = work_dir() / "rep_a.json";
  const fs::path b = work_dir() / "rep_b.json";
  REQUIRE(run_cli("build --n 32 --d 2 --seed 9 -o \"" + a.string() + "\"").code == 0);
  REQUIRE(run_cli("build --n 32 --d 2 --seed 9 -o \"" + b.string() + "\"").code == 0);
  CHECK(slurp(a) == slurp(b));
}
