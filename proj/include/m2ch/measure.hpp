#pragma once

#include <cstddef>
#include <vector>

#include "m2ch/grid.hpp"

namespace m2ch {

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

/// Positive energy measure: an absolutely continuous density sampled on a
/// uniform x-grid plus a finite list of point masses.
struct EnergyMeasure {
  UniformGrid grid;
  std::vector<double> density;  // nonnegative samples, units energy/length
  std::vector<Atom> atoms;      // positive masses

  static EnergyMeasure zero(const UniformGrid& g);

  double atom_mass() const;
  /// Trapezoid integral of the density plus all atom masses.
  double total() const;
  void validate() const;
};

/// User-facing solution representation: velocity u, density deviation gamma
/// and its spatial derivative, plus the energy measure.  u_x is optional
/// (analytic when the scenario provides it, otherwise reconstructed by
/// centered differences where needed).
struct EulerianTriple {
  UniformGrid grid;
  std::vector<double> u, gamma, gamma_x;
  std::vector<double> u_x;  // may be empty
  EnergyMeasure mu;

  static EulerianTriple zero(const UniformGrid& g);
  void validate() const;
};

/// Left-continuous cumulative distribution F(y) = mu(-inf, y): cumulative
/// trapezoid of the density plus masses of atoms strictly left of y.
class MeasureCdf {
 public:
  explicit MeasureCdf(const EnergyMeasure& mu);

  double left_limit(double y) const;
  double total() const { return ac_total_ + atom_total_; }
  double support_lo() const { return support_lo_; }
  double support_hi() const { return support_hi_; }

 private:
  UniformGrid grid_;
  std::vector<double> density_;
  std::vector<double> cumulative_;  // AC part at grid nodes
  std::vector<Atom> atoms_;         // sorted by location
  std::vector<double> atom_prefix_; // mass strictly left of atoms_[k]
  double ac_total_ = 0.0;
  double atom_total_ = 0.0;
  double support_lo_ = 0.0;
  double support_hi_ = 0.0;
};

}  // namespace m2ch
