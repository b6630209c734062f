#pragma once

#include <span>
#include <vector>

#include "m2ch/measure.hpp"
#include "m2ch/state.hpp"

namespace m2ch {

/// Monotone reparametrization of the label axis, sampled on the grid.
/// Slope samples travel with the map and are combined by the chain rule
/// under inversion and composition (centered differences of composed sample
/// sets would lose an order to interpolation noise).  alpha is the computed
/// group-size bound max(|f-Id|, |f'-1|) sup-norms plus the same for the
/// inverse.
struct Relabeling {
  UniformGrid grid;
  std::vector<double> f;
  std::vector<double> slope;
  double alpha = 0.0;
};

/// Slopes by centered differences of the samples when not supplied.
Relabeling make_relabeling(const UniformGrid& g, std::vector<double> samples);
Relabeling make_relabeling(const UniformGrid& g, std::vector<double> samples,
                           std::vector<double> slopes);
Relabeling identity_relabeling(const UniformGrid& g);

/// max(sup|f-Id|, sup|f_xi-1|) + max(sup|f^-1-Id|, sup|(f^-1)_xi-1|).
double relabeling_alpha(const UniformGrid& g, std::span<const double> f,
                        std::span<const double> slope);

Relabeling invert_relabeling(const Relabeling& f);
Relabeling compose_relabelings(const Relabeling& f, const Relabeling& g);  // f after g

/// Threshold on nu below which a grid cell counts as collapsed; maximal runs
/// of collapsed nodes produce atoms of the output measure.
inline constexpr double kFlatThreshold = 1e-8;

/// Eulerian -> Lagrangian map.  For each grid label xi, the characteristic
/// position solves F(y) + y = xi with F the measure's left-continuous
/// cumulative, by bisection; across an atom of mass m the position is
/// constant over a label interval of length m.  The output satisfies
/// y + H = Id exactly at the samples and passes the constraint check at
/// construction accuracy.
LagrangianState to_lagrangian(const EulerianTriple& e, const UniformGrid& xi_grid);

/// Lagrangian -> Eulerian map.  Values transported along non-collapsed
/// cells; the measure is the pushforward of delta d(xi): its cumulative is
/// evaluated on the x-grid and differentiated centrally (total mass then
/// telescopes exactly), and each maximal collapsed run contributes one atom.
EulerianTriple to_eulerian(const LagrangianState& X, const UniformGrid& x_grid);

/// Group action X . f: primary fields composed with f (zeta and H with the
/// extra f - Id shift for zeta), derivative fields composed and scaled by
/// the slope samples.  R composes by nearest-sample lookup.  With
/// repair_beta set, nodes where interpolation across a derivative jump
/// breaks the energy identity get beta rebuilt from the composed fields
/// (used by the canonical projection).
LagrangianState apply_relabeling(const LagrangianState& X, const Relabeling& f,
                                 bool repair_beta = false);

/// Canonical representative of the relabeling orbit: X . (y+H)^{-1}, which
/// makes y + H = Id on the grid.  The inverse's slopes come from the stored
/// Jacobian nu + delta.  Idempotent.
LagrangianState project_canonical(const LagrangianState& X);

}  // namespace m2ch
