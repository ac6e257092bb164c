#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cornerlab/grid_set.hpp"
#include "cornerlab/parallel.hpp"
#include "cornerlab/rng.hpp"
#include "cornerlab/torus.hpp"

namespace cornerlab {

// The annulus [r-delta, r) in the phi-norm, intersected with the slab power.
// A spec is usable by the pipeline only when 0 < delta <= r <= sqrt(d); the
// aggregate itself stays unchecked so out-of-support annuli (which simply
// produce empty sets) remain expressible.
struct AnnulusSpec {
  double r = 0.0;
  double delta = 0.0;

  bool valid_for_dimension(int d) const {
    return delta > 0.0 && delta <= r && r <= std::sqrt(static_cast<double>(d));
  }
};

// The rotation vector theta: one circle step per dimension.
struct Direction {
  std::vector<TorusValue> theta;

  int dimension() const { return static_cast<int>(theta.size()); }
};

// The random translation mu applied coordinate-wise.
struct Offset {
  TorusPairVec mu;

  int dimension() const { return static_cast<int>(mu.size()); }
};

struct ConstructionParams {
  int n = 0;
  int d = 0;
  double delta_coeff = 0.1;
  std::uint64_t seed = 0;
  int mu_trials = 8;
  int theta_attempt_budget = 256;

  void validate() const {
    if (n < 1 || n > GridSet::kMaxSide)
      throw std::invalid_argument("ConstructionParams: n out of range");
    if (d < 1) throw std::invalid_argument("ConstructionParams: d must be positive");
    if (!(delta_coeff > 0.0))
      throw std::invalid_argument("ConstructionParams: delta_coeff must be positive");
    if (mu_trials < 1) throw std::invalid_argument("ConstructionParams: mu_trials must be positive");
    if (theta_attempt_budget < 1)
      throw std::invalid_argument("ConstructionParams: theta_attempt_budget must be positive");
  }
};

// The affine map carrying a grid point into the product torus:
// coordinate i is (wrap(x*theta_i + mu_i.a), wrap(y*theta_i + mu_i.b)).
inline TorusPairVec torus_image(std::int64_t x, std::int64_t y, const Direction& dir,
                                const Offset& off) {
  const int d = dir.dimension();
  if (off.dimension() != d) throw std::invalid_argument("torus_image: dimension mismatch");
  TorusPairVec out(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const double step = dir.theta[static_cast<std::size_t>(i)].lift();
    out[static_cast<std::size_t>(i)] =
        TorusPair{TorusValue(static_cast<double>(x) * step + off.mu[static_cast<std::size_t>(i)].a.lift()),
                  TorusValue(static_cast<double>(y) * step + off.mu[static_cast<std::size_t>(i)].b.lift())};
  }
  return out;
}

// Membership in the annulus set: every coordinate in the slab AND phi-norm in
// [r-delta, r).
inline bool in_annulus(const TorusPairVec& v, const AnnulusSpec& spec) {
  double q = 0.0;
  for (const TorusPair p : v) {
    const double s = psi(p);
    if (s < 0.5 || s >= 1.5) return false;
    const double t = phi(p);
    q += t * t;
  }
  const double norm = std::sqrt(q);
  return norm >= spec.r - spec.delta && norm < spec.r;
}

// Smallest d in [1, n] whose dilate d*theta falls inside the forbidden ball
// (sum of squared circle norms <= threshold), or nothing if every dilate
// clears it. Negative d is covered by symmetry of the circle norm.
inline std::optional<std::int64_t> find_ball_violation(const Direction& dir, std::int64_t n,
                                                       double threshold) {
  const int dim = dir.dimension();
  for (std::int64_t d = 1; d <= n; ++d) {
    double sum = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double w = wrap_unit(static_cast<double>(d) * dir.theta[static_cast<std::size_t>(i)].lift());
      const double nm = std::min(w, 1.0 - w);
      sum += nm * nm;
    }
    if (!(sum > threshold)) return d;
  }
  return std::nullopt;
}

struct DirectionBudgetError : std::runtime_error {
  DirectionBudgetError(int attempts, std::int64_t last_d)
      : std::runtime_error("sample_direction: no admissible direction in " +
                           std::to_string(attempts) + " attempts (last violating d = " +
                           std::to_string(last_d) + ")"),
        attempts_used(attempts),
        last_violating_d(last_d) {}

  int attempts_used;
  std::int64_t last_violating_d;
};

// Rejection-samples theta uniformly from [0,1)^d until every dilate avoids
// the ball of squared radius 2*r*delta. Deterministic given params.seed.
inline Direction sample_direction(const ConstructionParams& params, const AnnulusSpec& spec) {
  params.validate();
  const double threshold = 2.0 * spec.r * spec.delta;
  std::int64_t last_d = 0;
  for (int attempt = 0; attempt < params.theta_attempt_budget; ++attempt) {
    Stream rng(params.seed, stream_tag::kTheta, static_cast<std::uint64_t>(attempt));
    Direction dir;
    dir.theta.reserve(static_cast<std::size_t>(params.d));
    for (int i = 0; i < params.d; ++i) dir.theta.emplace_back(rng.uniform01());
    const auto violation = find_ball_violation(dir, params.n, threshold);
    if (!violation) return dir;
    last_d = *violation;
  }
  throw DirectionBudgetError(params.theta_attempt_budget, last_d);
}

// The image set {(x,y) in [n]^2 : torus_image(x,y) in the annulus}. Rows are
// computed independently (and possibly in parallel); the per-coordinate lifts
// are evaluated directly, so membership agrees bit-for-bit with the
// torus_image + in_annulus route.
inline GridSet build_set(const ConstructionParams& params, const AnnulusSpec& spec,
                         const Direction& dir, const Offset& off) {
  params.validate();
  const int n = params.n;
  const int d = params.d;
  if (dir.dimension() != d || off.dimension() != d)
    throw std::invalid_argument("build_set: dimension mismatch");

  std::vector<double> ax(static_cast<std::size_t>(n) * d);
  std::vector<double> by(static_cast<std::size_t>(n) * d);
  for (int v = 1; v <= n; ++v) {
    for (int i = 0; i < d; ++i) {
      const double step = dir.theta[static_cast<std::size_t>(i)].lift();
      ax[static_cast<std::size_t>(v - 1) * d + i] =
          wrap_unit(static_cast<double>(v) * step + off.mu[static_cast<std::size_t>(i)].a.lift());
      by[static_cast<std::size_t>(v - 1) * d + i] =
          wrap_unit(static_cast<double>(v) * step + off.mu[static_cast<std::size_t>(i)].b.lift());
    }
  }

  GridSet out(n);
  const double lo = spec.r - spec.delta;
  const double hi = spec.r;
  parallel_for_index(static_cast<std::size_t>(n), [&](std::size_t row) {
    const int y = static_cast<int>(row) + 1;
    const double* b = &by[row * static_cast<std::size_t>(d)];
    for (int x = 1; x <= n; ++x) {
      const double* a = &ax[static_cast<std::size_t>(x - 1) * d];
      double q = 0.0;
      bool ok = true;
      for (int i = 0; i < d; ++i) {
        const double s = a[i] + b[i];
        if (s < 0.5 || s >= 1.5) {
          ok = false;
          break;
        }
        const double t = a[i] - b[i];
        q += t * t;
      }
      if (!ok) continue;
      const double norm = std::sqrt(q);
      if (norm >= lo && norm < hi) out.add(x, y);
    }
  });
  return out;
}

struct OffsetSearch {
  Offset offset;
  GridSet set;
  std::vector<std::uint64_t> trial_sizes;
};

// Samples params.mu_trials independent uniform offsets and keeps the largest
// resulting set (ties: first found). Deterministic given params.seed.
inline OffsetSearch best_offset(const ConstructionParams& params, const AnnulusSpec& spec,
                                const Direction& dir) {
  params.validate();
  std::optional<OffsetSearch> best;
  std::uint64_t best_size = 0;
  std::vector<std::uint64_t> sizes;
  sizes.reserve(static_cast<std::size_t>(params.mu_trials));
  for (int trial = 0; trial < params.mu_trials; ++trial) {
    Stream rng(params.seed, stream_tag::kMu, static_cast<std::uint64_t>(trial));
    Offset off;
    off.mu.reserve(static_cast<std::size_t>(params.d));
    for (int i = 0; i < params.d; ++i) {
      const double a = rng.uniform01();
      const double b = rng.uniform01();
      off.mu.push_back(TorusPair{TorusValue(a), TorusValue(b)});
    }
    GridSet set = build_set(params, spec, dir, off);
    const std::uint64_t size = set.size();
    sizes.push_back(size);
    if (!best || size > best_size) {
      best = OffsetSearch{std::move(off), std::move(set), {}};
      best_size = size;
    }
  }
  best->trial_sizes = std::move(sizes);
  return std::move(*best);
}

// delta = delta_coeff * sqrt(d) * n^(-2/d), plus the Euclidean volume bound
// for the forbidden ball of radius sqrt(2*r*delta) once r is known. The
// builder trusts the union-bound argument only while n * bound < 1.
struct DerivedParams {
  int n = 0;
  int d = 0;
  double delta = 0.0;

  double ball_volume_bound(double r) const {
    const double half_d = static_cast<double>(d) / 2.0;
    const double unit_ball = std::pow(std::numbers::pi, half_d) / std::tgamma(half_d + 1.0);
    return unit_ball * std::pow(2.0 * r * delta, half_d);
  }
};

inline DerivedParams derive_params(int n, int d, double delta_coeff) {
  if (n < 1) throw std::invalid_argument("derive_params: n must be positive");
  if (d < 1) throw std::invalid_argument("derive_params: d must be positive");
  if (!(delta_coeff > 0.0)) throw std::invalid_argument("derive_params: delta_coeff must be positive");
  DerivedParams out;
  out.n = n;
  out.d = d;
  out.delta = delta_coeff * std::sqrt(static_cast<double>(d)) *
              std::pow(static_cast<double>(n), -2.0 / static_cast<double>(d));
  return out;
}

// floor(sqrt(log2(n) / log2(2/sqrt(3)))), at least 1.
inline int default_dimension(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("default_dimension: n must be positive");
  const double ratio = std::log2(static_cast<double>(n)) / std::log2(2.0 / std::sqrt(3.0));
  const int d = static_cast<int>(std::floor(std::sqrt(ratio)));
  return d < 1 ? 1 : d;
}

}  // namespace cornerlab
