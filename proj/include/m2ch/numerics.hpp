#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "m2ch/grid.hpp"

namespace m2ch {

inline bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

inline double trapezoid(std::span<const double> f, double h) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * h;
}

inline double linf_norm(std::span<const double> f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

/// L2 norm by trapezoid quadrature of f^2 on a uniform grid of spacing h.
inline double l2_norm(std::span<const double> f, double h) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() * f.front() + f.back() * f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i] * f[i];
  return std::sqrt(s * h);
}

/// Centered differences in the interior, one-sided at the ends.
inline std::vector<double> difference_quotient(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d[0] = (f[1] - f[0]) / h;
  d[n - 1] = (f[n - 1] - f[n - 2]) / h;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  return d;
}

enum class Extrapolation { zero, clamp };

/// Piecewise-linear interpolation of samples on a uniform grid.
inline double interp_uniform(const UniformGrid& g, std::span<const double> v, double x,
                             Extrapolation ex) {
  if (x <= g.lo) return ex == Extrapolation::zero ? (x < g.lo ? 0.0 : v.front()) : v.front();
  if (x >= g.hi) return ex == Extrapolation::zero ? (x > g.hi ? 0.0 : v.back()) : v.back();
  double s = (x - g.lo) / g.h;
  auto k = static_cast<std::size_t>(s);
  if (k >= g.n - 1) k = g.n - 2;
  double t = s - static_cast<double>(k);
  return v[k] + t * (v[k + 1] - v[k]);
}

/// Nearest-sample lookup on a uniform grid (used for fields without a
/// continuity guarantee).
inline double interp_nearest_uniform(const UniformGrid& g, std::span<const double> v, double x,
                                     Extrapolation ex) {
  if (x < g.lo) return ex == Extrapolation::zero ? 0.0 : v.front();
  if (x > g.hi) return ex == Extrapolation::zero ? 0.0 : v.back();
  auto k = static_cast<std::size_t>(std::llround((x - g.lo) / g.h));
  if (k >= g.n) k = g.n - 1;
  return v[k];
}

/// Index of the cell [xs[k], xs[k+1]] containing x in a nondecreasing sample
/// set; clamps to the first/last cell outside the range.
inline std::size_t monotone_cell(std::span<const double> xs, double x) {
  const std::size_t n = xs.size();
  if (x <= xs[0]) return 0;
  if (x >= xs[n - 1]) return n - 2;
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t k = static_cast<std::size_t>(it - xs.begin());
  return (k == 0) ? 0 : k - 1;
}

}  // namespace m2ch
