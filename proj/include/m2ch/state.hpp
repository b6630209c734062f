#pragma once

#include <cstddef>
#include <vector>

#include "m2ch/grid.hpp"

namespace m2ch {

/// Solver state on the label grid: the five primary fields (zeta, U, Gamma,
/// R, H) together with their independently evolved derivatives
/// (nu = y_xi, beta = U_xi, kappa = Gamma_xi, delta = H_xi).
///
/// The characteristic position is y(xi) = xi + zeta(xi).  Derivatives are
/// state variables of their own subsystem and are never recomputed by
/// finite-differencing the primary fields.
struct LagrangianState {
  UniformGrid grid;
  std::vector<double> zeta, U, Gamma, R, H;
  std::vector<double> nu, beta, kappa, delta;

  std::size_t size() const { return grid.n; }

  double y(std::size_t i) const { return grid.point(i) + zeta[i]; }

  std::vector<double> y_points() const {
    std::vector<double> ys(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) ys[i] = y(i);
    return ys;
  }

  /// Rest state: all fields zero, nu = 1, delta = 0 (an exact fixed point).
  static LagrangianState rest(const UniformGrid& g);
};

/// Residuals of the invariant-set conditions.  min_nu and min_delta check the
/// sign conditions, slope_residual is max |R*nu - kappa|, energy_residual is
/// max |nu*delta - nu^2*(U^2+Gamma^2+R^2) - beta^2|.
struct ConstraintReport {
  double min_nu = 0.0;
  double min_delta = 0.0;
  double min_nu_plus_delta = 0.0;
  double slope_residual = 0.0;
  double energy_residual = 0.0;
  double h_at_left = 0.0;   // H at the left grid end (truncated-domain limit)
  bool h_nondecreasing = true;

  bool pass(double tol) const {
    return min_nu >= -tol && min_delta >= -tol && min_nu_plus_delta > -tol &&
           slope_residual <= tol && energy_residual <= tol &&
           std::abs(h_at_left) <= tol && h_nondecreasing;
  }
};

ConstraintReport check_constraints(const LagrangianState& X);

/// Norm of the solution space: V-norms for zeta and H, an H1-type norm
/// (sup + L2 + derivative L2) for U and Gamma, sup + L2 for R.  L2 norms use
/// trapezoid quadrature, sup norms the sample max, and zeta_xi = nu - 1.
double e_norm(const LagrangianState& X);

/// e_norm of the difference of two states on the same grid.
double e_distance(const LagrangianState& A, const LagrangianState& B);

/// sup-norm of the primary-field difference (no derivative terms).
double linf_distance(const LagrangianState& A, const LagrangianState& B);

/// H at the last grid sample, the truncated-domain stand-in for H(+inf).
double total_energy(const LagrangianState& X);

/// Vector-space combination a*A + b*B in the solution space.  Derivative
/// slots combine accordingly: nu is affine around 1 (zeta_xi = nu - 1 is the
/// linear component), the others are plain linear.
LagrangianState lin_comb(double a, const LagrangianState& A, double b,
                         const LagrangianState& B);

/// Throws invalid_state if any array contains a non-finite entry.
void require_finite(const LagrangianState& X, const char* where);

}  // namespace m2ch
