#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cornerlab/commands.hpp"

namespace {

using cornerlab::BuildOptions;
using cornerlab::EstimateOptions;
using cornerlab::SweepOptions;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cornerlab: corner-free grid sets from torus-annulus constructions"};
  app.require_subcommand(1);

  BuildOptions build_opts;
  std::string build_output;
  auto* build = app.add_subcommand("build", "construct a verified corner-free set");
  build->add_option("--n", build_opts.n, "grid side N")->required()->check(CLI::Range(1, 1 << 16));
  build->add_option("--d", build_opts.d, "dimension D (default: derived from N)")
      ->check(CLI::PositiveNumber);
  build->add_option("--delta-coeff", build_opts.delta_coeff, "coefficient c in delta = c sqrt(D) N^(-2/D)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  build->add_option("--seed", build_opts.seed, "RNG seed")->capture_default_str();
  build->add_option("--mu-trials", build_opts.mu_trials, "offsets sampled, best kept")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  build->add_option("--radius-mode", build_opts.radius_mode, "radius selection: mc or exact")
      ->capture_default_str()
      ->check(CLI::IsMember({"mc", "exact"}));
  build->add_option("--samples", build_opts.samples, "Monte Carlo samples for radius selection")
      ->capture_default_str()
      ->check(CLI::Range(std::uint64_t{10'000}, std::uint64_t{1} << 32));
  build->add_option("-o,--output", build_output, "output set file (JSON)")->required();

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "check a set file for corners");
  verify->add_option("path", verify_path, "set file to verify")->required();

  SweepOptions sweep_opts;
  std::string sweep_output;
  auto* sweep = app.add_subcommand("sweep", "build across N values and emit a CSV report");
  sweep->add_option("--n-list", sweep_opts.n_list, "comma-separated grid sides")
      ->required()
      ->delimiter(',')
      ->check(CLI::Range(1, 1 << 16));
  sweep->add_option("--d", sweep_opts.d, "dimension D (default: derived per N)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seeds", sweep_opts.seeds, "seeds 0..count-1 per N")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sweep->add_flag_callback("--no-verify", [&] { sweep_opts.verify = false; },
                           "skip brute-force verification of each row");
  sweep->add_flag("--with-baseline", sweep_opts.with_baseline,
                  "also report diagonal-lift baseline densities (stderr)");
  sweep->add_option("--delta-coeff", sweep_opts.delta_coeff)->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_option("--mu-trials", sweep_opts.mu_trials)->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_option("--radius-mode", sweep_opts.radius_mode)
      ->capture_default_str()
      ->check(CLI::IsMember({"mc", "exact"}));
  sweep->add_option("--samples", sweep_opts.samples)
      ->capture_default_str()
      ->check(CLI::Range(std::uint64_t{10'000}, std::uint64_t{1} << 32));
  sweep->add_option("-o,--output", sweep_output, "CSV output path (default: stdout)");

  EstimateOptions est_opts;
  auto* estimate = app.add_subcommand("estimate", "report the selected annulus radius and volume");
  estimate->add_option("--d", est_opts.d, "dimension D")->required()->check(CLI::PositiveNumber);
  estimate->add_option("--delta", est_opts.delta, "annulus thickness")
      ->required()
      ->check(CLI::PositiveNumber);
  estimate->add_option("--mode", est_opts.mode, "mc or exact")
      ->capture_default_str()
      ->check(CLI::IsMember({"mc", "exact"}));
  estimate->add_option("--samples", est_opts.samples)
      ->capture_default_str()
      ->check(CLI::Range(std::uint64_t{10'000}, std::uint64_t{1} << 32));
  estimate->add_option("--grid-points", est_opts.grid_points)
      ->capture_default_str()
      ->check(CLI::Range(1 << 10, 1 << 20));
  estimate->add_option("--seed", est_opts.seed)->capture_default_str();

  int baseline_n = 0;
  std::string baseline_output;
  auto* baseline = app.add_subcommand("baseline", "diagonal lift of a progression-free set");
  baseline->add_option("--n", baseline_n, "grid side N")->required()->check(CLI::Range(1, 1 << 16));
  baseline->add_option("-o,--output", baseline_output, "output set file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cornerlab::kExitUsage;
  }

  if (build->parsed())
    return cornerlab::cmd_build(build_opts, build_output, std::cout, std::cerr);
  if (verify->parsed()) return cornerlab::cmd_verify(verify_path, std::cout, std::cerr);
  if (sweep->parsed()) return cornerlab::cmd_sweep(sweep_opts, sweep_output, std::cout, std::cerr);
  if (estimate->parsed()) return cornerlab::cmd_estimate(est_opts, std::cout, std::cerr);
  if (baseline->parsed())
    return cornerlab::cmd_baseline(baseline_n, baseline_output, std::cout, std::cerr);
  return cornerlab::kExitUsage;
}
