#pragma once

//! Open intervals, coordinate boxes (generator domains), and distribution
//! supports. Domains of convex generators are products of open intervals;
//! +/-infinity endpoints are first-class.

#include <cmath>
#include <limits>
#include <vector>

#include "duodiv/linalg.hpp"

namespace duodiv {

inline constexpr double inf = std::numeric_limits<double>::infinity();

//! Open interval (lo, hi). lo = -inf and/or hi = +inf allowed.
struct Interval {
  double lo = -inf;
  double hi = inf;

  bool contains(double x) const { return x > lo && x < hi; }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  double width() const { return hi - lo; }

  //! Interior point used to seed solvers: midpoint when bounded, a point one
  //! unit inside a single finite endpoint, 0 on the whole line.
  double anchor() const {
    if (bounded()) return 0.5 * (lo + hi);
    if (std::isfinite(lo)) return lo + 1.0;
    if (std::isfinite(hi)) return hi - 1.0;
    return 0.0;
  }

  //! Intersection clipped to [-bound, bound]; used for dominance scans over
  //! unbounded domains.
  Interval clipped(double bound) const {
    return Interval{lo > -bound ? lo : -bound, hi < bound ? hi : bound};
  }

  bool subset_of(const Interval& other) const { return lo >= other.lo && hi <= other.hi; }

  friend bool operator==(const Interval& a, const Interval& b) = default;
};

inline Interval intersect(const Interval& a, const Interval& b) {
  return Interval{a.lo > b.lo ? a.lo : b.lo, a.hi < b.hi ? a.hi : b.hi};
}

//! Product of open intervals, one per coordinate.
struct Box {
  std::vector<Interval> coords;

  Box() = default;
  Box(std::initializer_list<Interval> cs) : coords(cs) {}
  explicit Box(std::vector<Interval> cs) : coords(std::move(cs)) {}

  static Box real_line(int dim = 1) { return Box{std::vector<Interval>(dim, Interval{})}; }

  int dim() const { return static_cast<int>(coords.size()); }

  bool contains(const Vector& x) const {
    if (static_cast<int>(x.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i)
      if (!coords[i].contains(x[i])) return false;
    return true;
  }

  bool empty() const {
    for (const auto& c : coords)
      if (!(c.lo < c.hi)) return true;
    return false;
  }

  bool subset_of(const Box& other) const {
    if (dim() != other.dim()) return false;
    for (int i = 0; i < dim(); ++i)
      if (!coords[i].subset_of(other.coords[i])) return false;
    return true;
  }

  friend bool operator==(const Box& a, const Box& b) = default;
};

inline Box intersect(const Box& a, const Box& b) {
  Box r;
  const int d = a.dim() < b.dim() ? a.dim() : b.dim();
  r.coords.reserve(d);
  for (int i = 0; i < d; ++i) r.coords.push_back(intersect(a.coords[i], b.coords[i]));
  return r;
}

//! Support of a distribution: the nonnegative integers (counting measure) or
//! an interval (Lebesgue measure). Interval supports are treated as open;
//! densities at the endpoints themselves never matter under integration.
struct Support {
  enum class Kind { nonneg_integers, interval };

  Kind kind = Kind::interval;
  Interval range{};  // meaningful for Kind::interval

  static Support nonneg_integers() { return Support{Kind::nonneg_integers, {0.0, inf}}; }
  static Support on(double lo, double hi) { return Support{Kind::interval, {lo, hi}}; }
  static Support real_line() { return on(-inf, inf); }
  static Support positive_reals() { return on(0.0, inf); }

  bool discrete() const { return kind == Kind::nonneg_integers; }

  bool contains(double x) const {
    if (discrete()) return x >= 0.0 && std::floor(x) == x && std::isfinite(x);
    return range.contains(x);
  }

  bool subset_of(const Support& other) const {
    if (kind != other.kind) return false;
    if (discrete()) return true;
    return range.subset_of(other.range);
  }

  friend bool operator==(const Support& a, const Support& b) = default;
};

}  // namespace duodiv
