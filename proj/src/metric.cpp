#include "m2ch/metric.hpp"

#include <algorithm>
#include <cmath>

#include "m2ch/errors.hpp"
#include "m2ch/evolution.hpp"
#include "m2ch/numerics.hpp"

namespace m2ch {

namespace {

double objective(const LagrangianState& A, const LagrangianState& B,
                 const Relabeling& f, const Relabeling& g) {
  return e_distance(apply_relabeling(A, f), B) + e_distance(A, apply_relabeling(B, g));
}

// canonical aligner: f with (y_A + H_A) o f = y_B + H_B, by monotone
// inversion; slopes from the stored Jacobians by the chain rule
bool canonical_aligner(const LagrangianState& A, const LagrangianState& B,
                       Relabeling& out) {
  const std::size_t n = A.size();
  std::vector<double> ga(n), gb(n), ja(n);
  for (std::size_t i = 0; i < n; ++i) {
    ga[i] = A.y(i) + A.H[i];
    gb[i] = B.y(i) + B.H[i];
    ja[i] = A.nu[i] + A.delta[i];
    if (!(ja[i] > 0.0)) return false;
  }
  for (std::size_t i = 1; i < n; ++i)
    if (!(ga[i] > ga[i - 1]) || !(gb[i] > gb[i - 1])) return false;

  std::vector<double> f(n), slope(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = gb[i];
    if (x <= ga.front()) {
      f[i] = A.grid.lo - (ga.front() - x);
    } else if (x >= ga.back()) {
      f[i] = A.grid.hi + (x - ga.back());
    } else {
      const std::size_t k = monotone_cell(ga, x);
      const double t = (x - ga[k]) / (ga[k + 1] - ga[k]);
      f[i] = A.grid.point(k) + t * A.grid.h;
    }
    slope[i] = (B.nu[i] + B.delta[i]) /
               interp_uniform(A.grid, ja, f[i], Extrapolation::clamp);
    if (!(slope[i] > 0.0)) return false;
  }
  for (std::size_t i = 1; i < n; ++i)
    if (!(f[i] > f[i - 1])) return false;
  out = make_relabeling(A.grid, std::move(f), std::move(slope));
  return true;
}

}  // namespace

DistanceReport relabeled_distance(const LagrangianState& A, const LagrangianState& B,
                                  const std::vector<RelabelingPair>& candidates) {
  if (!A.grid.same_as(B.grid))
    throw Error(ErrorCode::invalid_argument, "relabeled_distance: grid mismatch");

  DistanceReport r;
  r.e_dist = e_distance(A, B);
  r.value = 2.0 * r.e_dist;  // identity pair evaluates the objective exactly
  r.candidate = "identity";

  Relabeling fc;
  if (canonical_aligner(A, B, fc)) {
    const double v = objective(A, B, fc, invert_relabeling(fc));
    if (v < r.value) {
      r.value = v;
      r.candidate = "canonical";
    }
  }
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const double v = objective(A, B, candidates[k].first, candidates[k].second);
    if (v < r.value) {
      r.value = v;
      r.candidate = "user[" + std::to_string(k) + "]";
    }
  }
  return r;
}

DistanceReport chained_distance(const LagrangianState& A, const LagrangianState& B,
                                double M, int chain_length,
                                const std::vector<RelabelingPair>& candidates) {
  if (total_energy(A) > M || total_energy(B) > M)
    throw Error(ErrorCode::domain_error, "chained_distance: energy exceeds M");
  DistanceReport best = relabeled_distance(A, B, candidates);
  for (int L = 2; L <= chain_length; ++L) {
    double sum = 0.0;
    LagrangianState prev = A;
    for (int k = 1; k <= L; ++k) {
      const double tau = static_cast<double>(k) / static_cast<double>(L);
      LagrangianState next =
          (k == L) ? B : project_canonical(lin_comb(1.0 - tau, A, tau, B));
      sum += relabeled_distance(prev, next, candidates).value;
      prev = std::move(next);
    }
    if (sum < best.value) {
      best.value = sum;
      best.candidate = "chain[" + std::to_string(L) + "]";
    }
  }
  return best;
}

DistanceReport eulerian_distance(const EulerianTriple& a, const EulerianTriple& b,
                                 const UniformGrid& xi_grid, double M) {
  if (a.mu.total() > M || b.mu.total() > M)
    throw Error(ErrorCode::domain_error, "eulerian_distance: energy exceeds M");
  return chained_distance(to_lagrangian(a, xi_grid), to_lagrangian(b, xi_grid), M);
}

std::vector<LipschitzRow> lipschitz_ratio_experiment(
    const EulerianTriple& e1, const EulerianTriple& e2, const UniformGrid& xi_grid,
    const UniformGrid& x_out, double dt, std::span<const double> times, double M) {
  if (times.empty() || times.front() != 0.0)
    throw Error(ErrorCode::invalid_argument,
                "lipschitz_ratio_experiment: times must start at 0");

  LagrangianState X1 = to_lagrangian(e1, xi_grid);
  LagrangianState X2 = to_lagrangian(e2, xi_grid);
  Stepper s1(X1.size()), s2(X2.size());
  s1.set_monotone_tol(stepping_monotone_tol(xi_grid.h));
  s2.set_monotone_tol(stepping_monotone_tol(xi_grid.h));

  std::vector<LipschitzRow> rows;
  double d0 = 0.0;
  double t_now = 0.0;
  for (double t_target : times) {
    const auto steps = static_cast<long long>(std::llround((t_target - t_now) / dt));
    for (long long k = 0; k < steps; ++k) {
      s1.step(X1, dt);
      s2.step(X2, dt);
    }
    t_now = t_target;

    EulerianTriple a = to_eulerian(X1, x_out);
    EulerianTriple b = to_eulerian(X2, x_out);
    DistanceReport d = eulerian_distance(a, b, xi_grid, M);

    LipschitzRow row;
    row.t = t_target;
    row.distance = d.value;
    if (rows.empty()) d0 = d.value;
    row.zero_start = (d0 == 0.0);
    row.ratio = row.zero_start ? 0.0 : d.value / d0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace m2ch
