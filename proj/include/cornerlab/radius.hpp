#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cornerlab/parallel.hpp"
#include "cornerlab/rng.hpp"
#include "cornerlab/torus.hpp"

namespace cornerlab {

// Measure of the slab inside the unit square.
inline constexpr double kSlabMeasure = 0.75;
// E[phi(p)^2 | p in slab] = integral of t^2 h(t) dt = 5/24.
inline constexpr double kPhiSecondMoment = 5.0 / 24.0;
// Var(phi^2 | slab) = 7/80 - (5/24)^2; used for standard-error bounds.
inline constexpr double kPhiSquareVariance = 7.0 / 80.0 - kPhiSecondMoment * kPhiSecondMoment;

struct VolumeEstimate {
  int d = 0;
  double delta = 0.0;
  double r = 0.0;                  // upper edge (k*+1)*delta of the chosen bin
  double conditional_mass = 0.0;   // P(phi-norm in [r-delta, r) | slab power)
  double volume = 0.0;             // (3/4)^d * conditional_mass
  std::uint64_t samples = 0;       // 0 for the deterministic oracle
  double std_error = 0.0;          // 0 for the deterministic oracle
};

// Rejection sampler for the uniform distribution on the slab: draw (a,b)
// uniform on [0,1)^2, accept iff a+b lands in [1/2, 3/2). Acceptance
// probability is exactly 3/4.
class SlabSampler {
 public:
  explicit SlabSampler(Stream rng) : rng_(rng) {}

  TorusPair next() {
    for (;;) {
      ++attempts_;
      const double a = rng_.uniform01();
      const double b = rng_.uniform01();
      const double s = a + b;
      if (s >= 0.5 && s < 1.5) {
        ++accepts_;
        return TorusPair{TorusValue(a), TorusValue(b)};
      }
    }
  }

  std::uint64_t attempts() const { return attempts_; }
  std::uint64_t accepts() const { return accepts_; }

 private:
  Stream rng_;
  std::uint64_t attempts_ = 0;
  std::uint64_t accepts_ = 0;
};

// Density of phi(p) for p uniform on the slab. Derivation: in rotated
// coordinates s = a+b, t = a-b the uniform square has density 1/2 on
// {|t| <= min(s, 2-s)}; conditioning on s in [1/2,3/2) (mass 3/4) and
// integrating out s leaves
//   h(t) = 2/3          for |t| <= 1/2,
//   h(t) = (4/3)(1-|t|) for 1/2 < |t| < 1,   0 otherwise.
inline double phi_density(double t) {
  const double u = std::fabs(t);
  if (u <= 0.5) return 2.0 / 3.0;
  if (u < 1.0) return (4.0 / 3.0) * (1.0 - u);
  return 0.0;
}

namespace detail {

inline constexpr std::uint64_t kSampleBlock = 1 << 16;

inline std::uint64_t block_count(std::uint64_t samples) {
  return (samples + kSampleBlock - 1) / kSampleBlock;
}

inline std::uint64_t block_size(std::uint64_t samples, std::uint64_t block) {
  const std::uint64_t begin = block * kSampleBlock;
  return std::min(kSampleBlock, samples - begin);
}

}  // namespace detail

// Monte Carlo estimate of E[phi^2 | slab]; lands within a few standard
// errors of 5/24.
inline double estimate_second_moment(std::uint64_t samples, std::uint64_t seed) {
  if (samples < 10'000) throw std::invalid_argument("estimate_second_moment: too few samples");
  const std::uint64_t blocks = detail::block_count(samples);
  std::vector<double> partial(blocks, 0.0);
  parallel_for_index(blocks, [&](std::size_t b) {
    SlabSampler sampler(Stream(seed, stream_tag::kMoment, b));
    const std::uint64_t count = detail::block_size(samples, b);
    double sum = 0.0;
    for (std::uint64_t i = 0; i < count; ++i) {
      const double t = phi(sampler.next());
      sum += t * t;
    }
    partial[b] = sum;
  });
  double total = 0.0;
  for (const double p : partial) total += p;  // fixed block order
  return total / static_cast<double>(samples);
}

// Histogram of the phi-norm of slab-power samples over bins [k*delta,
// (k+1)*delta). Bin counts are exact integers merged in block order, so the
// result is independent of the worker count.
inline std::vector<std::uint64_t> norm_histogram_mc(int d, double delta, std::uint64_t samples,
                                                    std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("norm_histogram_mc: d must be positive");
  if (!(delta > 0.0)) throw std::invalid_argument("norm_histogram_mc: delta must be positive");
  if (samples < 10'000) throw std::invalid_argument("norm_histogram_mc: too few samples");
  const std::size_t bins =
      static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(d)) / delta)) + 1;
  const std::uint64_t blocks = detail::block_count(samples);
  std::vector<std::vector<std::uint64_t>> partial(blocks);
  parallel_for_index(blocks, [&](std::size_t b) {
    SlabSampler sampler(Stream(seed, stream_tag::kRadius, b));
    std::vector<std::uint64_t> hist(bins, 0);
    const std::uint64_t count = detail::block_size(samples, b);
    for (std::uint64_t i = 0; i < count; ++i) {
      double q = 0.0;
      for (int k = 0; k < d; ++k) {
        const double t = phi(sampler.next());
        q += t * t;
      }
      const double norm = std::sqrt(q);
      const std::size_t idx = std::min(bins - 1, static_cast<std::size_t>(norm / delta));
      ++hist[idx];
    }
    partial[b] = std::move(hist);
  });
  std::vector<std::uint64_t> hist(bins, 0);
  for (const auto& h : partial)
    for (std::size_t i = 0; i < bins; ++i) hist[i] += h[i];
  return hist;
}

// Picks the most populated delta-bin of the sampled phi-norm distribution and
// returns its upper edge as r. Ties keep the lowest bin.
inline VolumeEstimate select_radius_mc(int d, double delta, std::uint64_t samples,
                                       std::uint64_t seed) {
  const auto hist = norm_histogram_mc(d, delta, samples, seed);
  std::size_t best = 0;
  for (std::size_t k = 1; k < hist.size(); ++k)
    if (hist[k] > hist[best]) best = k;
  const double p = static_cast<double>(hist[best]) / static_cast<double>(samples);
  VolumeEstimate out;
  out.d = d;
  out.delta = delta;
  out.r = (static_cast<double>(best) + 1.0) * delta;
  out.conditional_mass = p;
  out.volume = std::pow(kSlabMeasure, d) * p;
  out.samples = samples;
  out.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return out;
}

// CDF of phi^2 for one slab coordinate: G(u) = P(phi^2 <= u). With s =
// sqrt(u): (4/3)s for s <= 1/2, else 2/3 + (8/3)(s - s^2/2 - 3/8).
inline double squared_phi_cdf(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double s = std::sqrt(u);
  if (s <= 0.5) return (4.0 / 3.0) * s;
  return 2.0 / 3.0 + (8.0 / 3.0) * (s - s * s / 2.0 - 3.0 / 8.0);
}

// Deterministic distribution of the squared phi-norm of d slab coordinates:
// exact per-cell masses of phi^2 on a uniform grid over [0,1], convolved d
// times. Replaces the concentration-inequality step with a computed answer.
class SquaredNormDistribution {
 public:
  SquaredNormDistribution(int d, int grid_points) : d_(d) {
    if (d < 1) throw std::invalid_argument("SquaredNormDistribution: d must be positive");
    if (grid_points < (1 << 10))
      throw std::invalid_argument("SquaredNormDistribution: grid too coarse");
    width_ = 1.0 / static_cast<double>(grid_points);
    std::vector<double> base(static_cast<std::size_t>(grid_points));
    for (int k = 0; k < grid_points; ++k)
      base[static_cast<std::size_t>(k)] =
          squared_phi_cdf((k + 1) * width_) - squared_phi_cdf(k * width_);
    cells_ = base;
    for (int step = 1; step < d; ++step) {
      std::vector<double> next(cells_.size() + base.size() - 1, 0.0);
      for (std::size_t i = 0; i < cells_.size(); ++i) {
        const double ci = cells_[i];
        if (ci == 0.0) continue;
        for (std::size_t j = 0; j < base.size(); ++j) next[i + j] += ci * base[j];
      }
      cells_ = std::move(next);
    }
    double total = 0.0;
    for (const double c : cells_) total += c;
    for (double& c : cells_) c /= total;
    prefix_.resize(cells_.size() + 1);
    prefix_[0] = 0.0;
    for (std::size_t i = 0; i < cells_.size(); ++i) prefix_[i + 1] = prefix_[i] + cells_[i];
  }

  // P(sum of squares <= u). Cell s carries the mass of sums in
  // [s*w, (s+d)*w); it is modeled as uniform on the width-w interval centered
  // at (s + d/2)*w, which reduces to the exact per-cell CDF when d = 1.
  double cdf(double u) const {
    const double y = u / width_ - (static_cast<double>(d_) - 1.0) / 2.0;
    if (y <= 0.0) return 0.0;
    if (y >= static_cast<double>(cells_.size())) return 1.0;
    const auto s = static_cast<std::size_t>(y);
    return prefix_[s] + (y - static_cast<double>(s)) * cells_[s];
  }

  // P(phi-norm in [lo, hi) | slab power).
  double interval_mass(double lo, double hi) const {
    if (!(hi > lo)) return 0.0;
    const double lo2 = std::max(lo, 0.0);
    return std::max(0.0, cdf(hi * hi) - cdf(lo2 * lo2));
  }

 private:
  int d_;
  double width_;
  std::vector<double> cells_;
  std::vector<double> prefix_;
};

inline double conditional_interval_mass_exact(int d, double lo, double hi,
                                              int grid_points = 1 << 14) {
  return SquaredNormDistribution(d, grid_points).interval_mass(lo, hi);
}

// Deterministic counterpart of select_radius_mc, driven by the convolved
// distribution instead of sampling.
inline VolumeEstimate select_radius_exact(int d, double delta, int grid_points = 1 << 14) {
  if (!(delta > 0.0)) throw std::invalid_argument("select_radius_exact: delta must be positive");
  const SquaredNormDistribution dist(d, grid_points);
  const std::size_t bins =
      static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(d)) / delta)) + 1;
  std::size_t best = 0;
  double best_mass = -1.0;
  for (std::size_t k = 0; k < bins; ++k) {
    const double mass = dist.interval_mass(static_cast<double>(k) * delta,
                                           (static_cast<double>(k) + 1.0) * delta);
    if (mass > best_mass) {
      best = k;
      best_mass = mass;
    }
  }
  VolumeEstimate out;
  out.d = d;
  out.delta = delta;
  out.r = (static_cast<double>(best) + 1.0) * delta;
  out.conditional_mass = best_mass;
  out.volume = std::pow(kSlabMeasure, d) * best_mass;
  return out;
}

}  // namespace cornerlab
