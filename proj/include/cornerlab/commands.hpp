#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cornerlab/baseline.hpp"
#include "cornerlab/construction.hpp"
#include "cornerlab/radius.hpp"
#include "cornerlab/set_file.hpp"
#include "cornerlab/sweep.hpp"
#include "cornerlab/verify.hpp"

namespace cornerlab {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

inline constexpr double kDeltaCoeffFloor = 0x1.0p-20;

struct PipelineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BuildOptions {
  int n = 0;
  int d = 0;  // 0 = derive from n
  double delta_coeff = 0.1;
  std::uint64_t seed = 0;
  int mu_trials = 8;
  std::string radius_mode = "mc";  // "mc" | "exact"
  std::uint64_t samples = 1'000'000;
  int grid_points = 1 << 14;
  int theta_attempt_budget = 256;
};

struct BuildResult {
  SetFile file;
  GridSet set;
  VolumeEstimate estimate;
  std::vector<std::uint64_t> trial_sizes;
  double final_delta_coeff = 0.0;
  int halvings = 0;
};

// The end-to-end construction: derive delta, select the annulus radius,
// rejection-sample an admissible direction, take the best offset, and verify.
// delta_coeff is halved (down to the floor) whenever delta exceeds sqrt(d),
// the union-bound guard n * Vol(ball) < 1 fails, or the direction budget is
// exhausted.
inline BuildResult run_build_pipeline(const BuildOptions& opts) {
  if (opts.n < 1 || opts.n > GridSet::kMaxSide)
    throw PipelineError("build: n out of range [1, 65536]");
  const int d = opts.d > 0 ? opts.d : default_dimension(opts.n);
  if (opts.radius_mode != "mc" && opts.radius_mode != "exact")
    throw PipelineError("build: radius mode must be mc or exact");

  const double sqrt_d = std::sqrt(static_cast<double>(d));
  double coeff = opts.delta_coeff;
  std::string last_obstacle = "never attempted";
  while (coeff >= kDeltaCoeffFloor) {
    const DerivedParams derived = derive_params(opts.n, d, coeff);
    if (derived.delta > sqrt_d) {
      last_obstacle = "delta exceeds sqrt(d)";
      coeff /= 2.0;
      continue;
    }
    VolumeEstimate estimate =
        opts.radius_mode == "mc"
            ? select_radius_mc(d, derived.delta, opts.samples, opts.seed)
            : select_radius_exact(d, derived.delta, opts.grid_points);
    if (estimate.r > sqrt_d) estimate.r = sqrt_d;  // top partial bin; keep spec valid
    const AnnulusSpec spec{estimate.r, derived.delta};
    if (static_cast<double>(opts.n) * derived.ball_volume_bound(spec.r) >= 1.0) {
      last_obstacle = "union-bound guard n * Vol(ball) >= 1";
      coeff /= 2.0;
      continue;
    }
    ConstructionParams params;
    params.n = opts.n;
    params.d = d;
    params.delta_coeff = coeff;
    params.seed = opts.seed;
    params.mu_trials = opts.mu_trials;
    params.theta_attempt_budget = opts.theta_attempt_budget;
    Direction dir;
    try {
      dir = sample_direction(params, spec);
    } catch (const DirectionBudgetError& e) {
      last_obstacle = e.what();
      coeff /= 2.0;
      continue;
    }
    OffsetSearch search = best_offset(params, spec, dir);
    if (const auto witness = find_corner(search.set)) {
      std::ostringstream msg;
      msg << "build: internal verification failed, corner at (" << witness->x << ", "
          << witness->y << ") with d = " << witness->d;
      throw PipelineError(msg.str());
    }

    BuildResult out{SetFile{}, std::move(search.set), estimate, std::move(search.trial_sizes),
                    coeff, 0};
    out.halvings = static_cast<int>(std::lround(std::log2(opts.delta_coeff / coeff)));
    out.file.n = opts.n;
    out.file.d = d;
    ConstructionBlock block;
    block.r = spec.r;
    block.delta = spec.delta;
    block.delta_coeff = coeff;
    for (const TorusValue t : dir.theta) block.theta.push_back(t.lift());
    for (const TorusPair p : search.offset.mu) block.mu.emplace_back(p.a.lift(), p.b.lift());
    block.seed = opts.seed;
    block.mu_trials = opts.mu_trials;
    out.file.construction = std::move(block);
    out.file.points = out.set.points();
    return out;
  }
  throw PipelineError("build: delta_coeff halving reached floor 2^-20; last obstacle: " +
                      last_obstacle);
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PipelineError("cannot open output file: " + path);
  out << content;
  if (!out) throw PipelineError("failed writing output file: " + path);
}

inline int cmd_build(const BuildOptions& opts, const std::string& output, std::ostream& out,
                     std::ostream& err, std::optional<BuildResult>* result_out = nullptr) {
  try {
    BuildResult result = run_build_pipeline(opts);
    write_text_file(output, result.file.serialize());
    out << "built n=" << result.file.n << " d=" << result.file.d
        << " r=" << fmt17(result.file.construction->r)
        << " delta=" << fmt17(result.file.construction->delta) << " size=" << result.set.size()
        << " -> " << output << "\n";
    if (result_out) result_out->emplace(std::move(result));
    return kExitOk;
  } catch (const PipelineError& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
}

inline int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot open " << path << "\n";
    return kExitUsage;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  SetFile file;
  try {
    file = SetFile::parse(buffer.str());
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const GridSet grid = file.to_grid();
  if (const auto witness = find_corner(grid)) {
    out << "corner at x=" << witness->x << " y=" << witness->y << " d=" << witness->d << "\n";
    return kExitVerifyFailed;
  }
  out << "corner-free\n";
  return kExitOk;
}

struct SweepOptions {
  std::vector<int> n_list;
  int d = 0;  // 0 = derive per n
  int seeds = 1;
  bool verify = true;
  bool with_baseline = false;
  double delta_coeff = 0.1;
  std::string radius_mode = "mc";
  std::uint64_t samples = 1'000'000;
  int mu_trials = 8;
};

inline int cmd_sweep(const SweepOptions& opts, const std::string& output, std::ostream& out,
                     std::ostream& err) {
  if (opts.n_list.empty() || opts.seeds < 1) {
    err << "error: sweep needs --n-list and --seeds >= 1\n";
    return kExitUsage;
  }
  std::ostringstream csv;
  csv << kSweepHeader << "\n";
  std::vector<std::pair<int, double>> torus_density;  // (n, mean density)
  try {
    for (const int n : opts.n_list) {
      double density_sum = 0.0;
      for (int seed = 0; seed < opts.seeds; ++seed) {
        BuildOptions bo;
        bo.n = n;
        bo.d = opts.d;
        bo.delta_coeff = opts.delta_coeff;
        bo.seed = static_cast<std::uint64_t>(seed);
        bo.mu_trials = opts.mu_trials;
        bo.radius_mode = opts.radius_mode;
        bo.samples = opts.samples;
        BuildResult result = run_build_pipeline(bo);
        const bool verified = opts.verify ? is_corner_free(result.set) : false;
        if (opts.verify && !verified) {
          err << "error: sweep row n=" << n << " seed=" << seed << " failed verification\n";
          return kExitVerifyFailed;
        }
        SweepRow row;
        row.n = n;
        row.d = result.file.d;
        row.r = result.file.construction->r;
        row.delta = result.file.construction->delta;
        row.size = result.set.size();
        row.density = static_cast<double>(row.size) / (static_cast<double>(n) * n);
        row.bound = size_bound(n, row.d);
        row.ratio = static_cast<double>(row.size) / row.bound;
        row.seed = static_cast<std::uint64_t>(seed);
        row.verified = verified;
        csv << to_csv_row(row) << "\n";
        density_sum += row.density;
      }
      torus_density.emplace_back(n, density_sum / opts.seeds);
    }
  } catch (const PipelineError& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }

  if (output.empty()) {
    out << csv.str();
  } else {
    try {
      write_text_file(output, csv.str());
    } catch (const PipelineError& e) {
      err << "error: " << e.what() << "\n";
      return kExitVerifyFailed;
    }
  }

  if (opts.with_baseline) {
    // Report-only comparison; kept off the CSV so the schema stays stable.
    for (const auto& [n, torus] : torus_density) {
      std::vector<std::int64_t> diag = behrend_set(2 * static_cast<std::int64_t>(n) - 1);
      for (std::int64_t& t : diag) t -= n;
      const GridSet lift = diagonal_lift(diag, n);
      const double baseline_density =
          static_cast<double>(lift.size()) / (static_cast<double>(n) * n);
      err << "baseline n=" << n << " torus_density=" << fmt17(torus)
          << " baseline_density=" << fmt17(baseline_density) << "\n";
    }
  }
  return kExitOk;
}

struct EstimateOptions {
  int d = 0;
  double delta = 0.0;
  std::string mode = "mc";
  std::uint64_t samples = 1'000'000;
  int grid_points = 1 << 14;
  std::uint64_t seed = 0;
};

inline int cmd_estimate(const EstimateOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.d < 1 || !(opts.delta > 0.0) || (opts.mode != "mc" && opts.mode != "exact")) {
    err << "error: estimate needs --d >= 1, --delta > 0, --mode mc|exact\n";
    return kExitUsage;
  }
  try {
    const VolumeEstimate est = opts.mode == "mc"
                                   ? select_radius_mc(opts.d, opts.delta, opts.samples, opts.seed)
                                   : select_radius_exact(opts.d, opts.delta, opts.grid_points);
    out << "{\n";
    out << "  \"d\": " << est.d << ",\n";
    out << "  \"delta\": " << fmt17(est.delta) << ",\n";
    out << "  \"mode\": \"" << opts.mode << "\",\n";
    out << "  \"samples\": " << est.samples << ",\n";
    out << "  \"r\": " << fmt17(est.r) << ",\n";
    out << "  \"conditional_mass\": " << fmt17(est.conditional_mass) << ",\n";
    out << "  \"volume\": " << fmt17(est.volume) << ",\n";
    out << "  \"std_error\": " << fmt17(est.std_error) << "\n";
    out << "}\n";
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

struct BaselineResult {
  SetFile file;
  GridSet set;
};

inline BaselineResult run_baseline_pipeline(int n) {
  if (n < 1 || n > GridSet::kMaxSide) throw PipelineError("baseline: n out of range [1, 65536]");
  const std::int64_t m = 2 * static_cast<std::int64_t>(n) - 1;
  std::vector<std::int64_t> diag = behrend_set(m);
  for (std::int64_t& t : diag) t -= n;
  GridSet lift = diagonal_lift(diag, n);
  if (const auto witness = find_corner(lift)) {
    std::ostringstream msg;
    msg << "baseline: internal verification failed, corner at (" << witness->x << ", "
        << witness->y << ") with d = " << witness->d;
    throw PipelineError(msg.str());
  }
  BaselineResult out{SetFile{}, std::move(lift)};
  out.file.n = n;
  out.file.d = 0;
  out.file.baseline = BaselineBlock{"behrend-diagonal", m, -n};
  out.file.points = out.set.points();
  return out;
}

inline int cmd_baseline(int n, const std::string& output, std::ostream& out, std::ostream& err,
                        std::optional<BaselineResult>* result_out = nullptr) {
  try {
    BaselineResult result = run_baseline_pipeline(n);
    write_text_file(output, result.file.serialize());
    out << "baseline n=" << result.file.n << " size=" << result.set.size() << " -> " << output
        << "\n";
    if (result_out) result_out->emplace(std::move(result));
    return kExitOk;
  } catch (const PipelineError& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
}

}  // namespace cornerlab
