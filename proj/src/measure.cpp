#include "m2ch/measure.hpp"

#include <algorithm>
#include <cmath>

#include "m2ch/errors.hpp"
#include "m2ch/numerics.hpp"

namespace m2ch {

EnergyMeasure EnergyMeasure::zero(const UniformGrid& g) {
  EnergyMeasure m;
  m.grid = g;
  m.density.assign(g.n, 0.0);
  return m;
}

double EnergyMeasure::atom_mass() const {
  double s = 0.0;
  for (const Atom& a : atoms) s += a.mass;
  return s;
}

double EnergyMeasure::total() const { return trapezoid(density, grid.h) + atom_mass(); }

void EnergyMeasure::validate() const {
  if (density.size() != grid.n)
    throw Error(ErrorCode::invalid_measure, "density size does not match grid");
  for (double d : density) {
    if (!std::isfinite(d) || d < 0.0)
      throw Error(ErrorCode::invalid_measure, "density must be finite and nonnegative");
  }
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.location) || !std::isfinite(a.mass) || a.mass <= 0.0)
      throw Error(ErrorCode::invalid_measure, "atoms need finite locations and positive mass");
  }
}

EulerianTriple EulerianTriple::zero(const UniformGrid& g) {
  EulerianTriple e;
  e.grid = g;
  e.u.assign(g.n, 0.0);
  e.gamma.assign(g.n, 0.0);
  e.gamma_x.assign(g.n, 0.0);
  e.mu = EnergyMeasure::zero(g);
  return e;
}

void EulerianTriple::validate() const {
  const std::size_t n = grid.n;
  if (u.size() != n || gamma.size() != n || gamma_x.size() != n)
    throw Error(ErrorCode::invalid_argument, "field sizes do not match grid");
  if (!u_x.empty() && u_x.size() != n)
    throw Error(ErrorCode::invalid_argument, "u_x size does not match grid");
  if (!all_finite(u) || !all_finite(gamma) || !all_finite(gamma_x) || !all_finite(u_x))
    throw Error(ErrorCode::invalid_argument, "non-finite field entry");
  if (!mu.grid.same_as(grid))
    throw Error(ErrorCode::invalid_argument, "measure grid differs from field grid");
  mu.validate();
}

MeasureCdf::MeasureCdf(const EnergyMeasure& mu) : grid_(mu.grid), density_(mu.density) {
  mu.validate();
  cumulative_.assign(grid_.n, 0.0);
  for (std::size_t i = 1; i < grid_.n; ++i)
    cumulative_[i] = cumulative_[i - 1] + 0.5 * grid_.h * (density_[i - 1] + density_[i]);
  ac_total_ = cumulative_.back();

  atoms_ = mu.atoms;
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  atom_prefix_.assign(atoms_.size(), 0.0);
  for (std::size_t k = 1; k < atoms_.size(); ++k)
    atom_prefix_[k] = atom_prefix_[k - 1] + atoms_[k - 1].mass;
  for (const Atom& a : atoms_) atom_total_ += a.mass;

  support_lo_ = grid_.lo;
  support_hi_ = grid_.hi;
  for (const Atom& a : atoms_) {
    support_lo_ = std::min(support_lo_, a.location);
    support_hi_ = std::max(support_hi_, a.location);
  }
}

double MeasureCdf::left_limit(double y) const {
  double ac;
  if (y <= grid_.lo) {
    ac = 0.0;
  } else if (y >= grid_.hi) {
    ac = ac_total_;
  } else {
    // integral of the piecewise-linear density up to y
    double s = (y - grid_.lo) / grid_.h;
    auto k = static_cast<std::size_t>(s);
    if (k >= grid_.n - 1) k = grid_.n - 2;
    const double t = y - grid_.point(k);
    const double slope = (density_[k + 1] - density_[k]) / grid_.h;
    ac = cumulative_[k] + density_[k] * t + 0.5 * slope * t * t;
  }
  double atom = 0.0;
  if (!atoms_.empty()) {
    // mass of atoms with location strictly below y
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), y,
                               [](const Atom& a, double v) { return a.location < v; });
    const auto k = static_cast<std::size_t>(it - atoms_.begin());
    atom = (k == 0) ? 0.0 : atom_prefix_[k - 1] + atoms_[k - 1].mass;
  }
  return ac + atom;
}

}  // namespace m2ch
