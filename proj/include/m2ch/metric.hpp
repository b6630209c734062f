#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "m2ch/measure.hpp"
#include "m2ch/state.hpp"
#include "m2ch/transform.hpp"

namespace m2ch {

/// Certified upper bound for a relabeling-invariant distance.  The true
/// distances are infima over the reparametrization group; this artifact only
/// ever evaluates finite candidate lists, so `value` is an upper bound and
/// is never claimed to equal the infimum.
struct DistanceReport {
  double value = 0.0;
  std::string candidate;  // which candidate pair achieved the bound
  double e_dist = 0.0;    // plain state-space distance, for reference
};

using RelabelingPair = std::pair<Relabeling, Relabeling>;

/// Upper bound on the aligned distance
///   inf over f,g of |A.f - B|_E + |A - B.g|_E,
/// evaluated over the candidate pairs plus the identity pair and the
/// canonical aligner f solving (y_A + H_A) o f = y_B + H_B.
DistanceReport relabeled_distance(const LagrangianState& A, const LagrangianState& B,
                                  const std::vector<RelabelingPair>& candidates = {});

/// Chained variant over canonical sections with energy bound M: chains of
/// projected convex combinations between the endpoints; chain length 1
/// reduces to relabeled_distance.  Throws domain_error when either energy
/// exceeds M.
DistanceReport chained_distance(const LagrangianState& A, const LagrangianState& B,
                                double M, int chain_length = 1,
                                const std::vector<RelabelingPair>& candidates = {});

/// Distance between Eulerian data sets, evaluated through the Lagrangian
/// transform on the given label grid.
DistanceReport eulerian_distance(const EulerianTriple& a, const EulerianTriple& b,
                                 const UniformGrid& xi_grid, double M);

struct LipschitzRow {
  double t = 0.0;
  double distance = 0.0;
  double ratio = 0.0;   // distance / initial distance (0 when degenerate)
  bool zero_start = false;
};

/// Evolves both data sets and reports the distance upper bound at each
/// requested time together with its ratio to the initial distance.
std::vector<LipschitzRow> lipschitz_ratio_experiment(
    const EulerianTriple& e1, const EulerianTriple& e2, const UniformGrid& xi_grid,
    const UniformGrid& x_out, double dt, std::span<const double> times, double M);

}  // namespace m2ch
