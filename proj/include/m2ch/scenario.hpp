#pragma once

#include <string>

#include "m2ch/measure.hpp"

namespace m2ch {

/// Built-in initial data families.
struct ScenarioConfig {
  enum class Kind { zero, peakon, peakon_antipeakon, gaussian, atom };
  Kind kind = Kind::zero;
  // peakon / peakon_antipeakon
  double c = 1.0;
  double a = 2.0;       // half-separation of the pair
  double center = 0.0;  // single-peakon peak position and gaussian center
  // gaussian
  double amp_u = 1.0;
  double amp_gamma = 0.0;
  double width = 1.0;
  // atom
  double mass = 1.0;
  double location = 0.0;
};

/// Samples the scenario's fields (with analytic derivatives) and its energy
/// density on the given grid.  Peakon kinks should sit on grid nodes; see
/// default_scenario_grid.
EulerianTriple build_scenario(const ScenarioConfig& cfg, const UniformGrid& grid);

/// Total energy of the scenario (closed form where available, otherwise a
/// fine-quadrature value): used to size label domains.
double scenario_energy(const ScenarioConfig& cfg);

/// Symmetric sampling grid with power-of-two spacing no coarser than half
/// the label spacing, so that peak positions at dyadic rationals land on
/// nodes.
UniformGrid default_scenario_grid(const ScenarioConfig& cfg, const UniformGrid& xi_grid);

/// Label domain for a scenario: [-extent, extent + energy + margin].
UniformGrid default_label_grid(const ScenarioConfig& cfg, std::size_t n,
                               double extent = 40.0, double margin = 5.0);

}  // namespace m2ch
