#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cornerlab {

// Canonical lift of a point of R/Z into [0,1).
inline double wrap_unit(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("wrap: non-finite input");
  const double r = x - std::floor(x);
  // x - floor(x) can round up to exactly 1.0 for tiny negative x.
  return r >= 1.0 ? 0.0 : r;
}

// A point of the circle R/Z, stored as its canonical lift.
class TorusValue {
 public:
  constexpr TorusValue() = default;
  explicit TorusValue(double x) : v_(wrap_unit(x)) {}

  double lift() const { return v_; }

  friend TorusValue operator+(TorusValue a, TorusValue b) { return TorusValue(a.v_ + b.v_); }
  friend bool operator==(TorusValue a, TorusValue b) { return a.v_ == b.v_; }

 private:
  double v_ = 0.0;
};

inline TorusValue wrap(double x) { return TorusValue(x); }

// Distance to the nearest integer, in [0, 1/2].
inline double torus_norm(TorusValue t) { return std::min(t.lift(), 1.0 - t.lift()); }

// A point of the two-coordinate torus, the ambient space of the construction.
struct TorusPair {
  TorusValue a;
  TorusValue b;

  friend TorusPair operator+(TorusPair p, TorusPair q) { return {p.a + q.a, p.b + q.b}; }
  friend bool operator==(TorusPair p, TorusPair q) { return p.a == q.a && p.b == q.b; }
};

// Sum of the coordinate lifts, in [0,2).
inline double psi(TorusPair p) { return p.a.lift() + p.b.lift(); }

// Difference of the coordinate lifts, in (-1,1). On the slab (below), shifts
// act on this value exactly as they would in R, which is what the whole
// construction leans on.
inline double phi(TorusPair p) { return p.a.lift() - p.b.lift(); }

// The slab where psi lands in [1/2, 3/2); addition does not wrap there.
inline bool in_slab(TorusPair p) {
  const double s = psi(p);
  return s >= 0.5 && s < 1.5;
}

// psi is invariant under swapping a shift's two coordinates, provided both
// shifted points stay in the slab. Vacuously true when they do not, so a
// property harness can sample unconditionally.
inline bool psi_swap_invariant(TorusPair p, TorusValue alpha, TorusValue beta,
                               double tol = 1e-9) {
  const TorusPair pq = p + TorusPair{alpha, beta};
  const TorusPair qp = p + TorusPair{beta, alpha};
  if (!in_slab(pq) || !in_slab(qp)) return true;
  return std::fabs(psi(pq) - psi(qp)) <= tol;
}

// The common value Delta = lift(p + (alpha,0)).a - lift(p).a, defined when both
// one-sided shifts of p stay in the slab. Then
//   Delta = phi(p+(alpha,0)) - phi(p) = phi(p) - phi(p+(0,alpha)),
//   wrap(Delta) = alpha, and torus_norm(alpha) <= |Delta|.
inline double phi_step(TorusPair p, TorusValue alpha) {
  const TorusPair first = p + TorusPair{alpha, TorusValue()};
  const TorusPair second = p + TorusPair{TorusValue(), alpha};
  if (!in_slab(first) || !in_slab(second))
    throw std::domain_error("phi_step: shift leaves slab");
  return first.a.lift() - p.a.lift();
}

// A point of the D-fold product of two-coordinate tori.
using TorusPairVec = std::vector<TorusPair>;

inline bool in_slab(const TorusPairVec& v) {
  return std::all_of(v.begin(), v.end(), [](TorusPair p) { return in_slab(p); });
}

inline std::vector<double> phi_values(const TorusPairVec& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = phi(v[i]);
  return out;
}

// Euclidean norm of the coordinate-wise phi image, in [0, sqrt(D)).
inline double phi_norm(const TorusPairVec& v) {
  double q = 0.0;
  for (const TorusPair p : v) {
    const double t = phi(p);
    q += t * t;
  }
  return std::sqrt(q);
}

}  // namespace cornerlab
