#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "m2ch/errors.hpp"

namespace m2ch {

/// Uniform sample grid, used both for the Lagrangian label variable and for
/// Eulerian output positions.
struct UniformGrid {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n = 2;
  double h = 1.0;

  static UniformGrid make(double lo, double hi, std::size_t n) {
    if (!(n >= 3)) throw Error(ErrorCode::invalid_argument, "grid needs n >= 3");
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
      throw Error(ErrorCode::invalid_argument, "grid needs finite hi > lo");
    UniformGrid g;
    g.lo = lo;
    g.hi = hi;
    g.n = n;
    g.h = (hi - lo) / static_cast<double>(n - 1);
    return g;
  }

  double point(std::size_t i) const { return lo + h * static_cast<double>(i); }

  std::vector<double> points() const {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = point(i);
    return p;
  }

  double length() const { return hi - lo; }

  bool same_as(const UniformGrid& o, double tol = 1e-12) const {
    return n == o.n && std::abs(lo - o.lo) <= tol && std::abs(hi - o.hi) <= tol;
  }
};

}  // namespace m2ch
