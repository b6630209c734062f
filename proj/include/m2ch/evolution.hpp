#pragma once

#include <functional>
#include <vector>

#include "m2ch/kernel.hpp"
#include "m2ch/measure.hpp"
#include "m2ch/state.hpp"

namespace m2ch {

/// Time derivative of every state array (slots named after the array they
/// differentiate).
struct StateRate {
  std::vector<double> zeta, U, Gamma, R, H, nu, beta, kappa, delta;
  void resize(std::size_t n);
};

/// Right-hand side of the coupled primary + derivative system:
///   zeta_t = U, U_t = -Q1, Gamma_t = -Q2 - P3, R_t = -P2 - Q3,
///   H_t = U^3 - 2 P1 U - 2 P2 Gamma - 2 Q3 Gamma,
///   nu_t = beta, beta_t = (U^2 - 2R^2 - 2P1) nu / 2 + delta / 2,
///   kappa_t = -(P2 + Q3) nu + R beta,
///   delta_t = (3U^2 - 2P1 + 2Gamma^2) beta
///             - (2 U Q1 + 2 Q2 Gamma + 2 P3 Gamma) nu - 2 (P2 + Q3) kappa.
/// One kernel evaluation per call.  Stepper instances hold scratch storage;
/// they are cheap to create and safe to use from one thread at a time.
class Stepper {
 public:
  explicit Stepper(std::size_t n);

  void rhs(const LagrangianState& X, StateRate& dX);
  /// Classical four-stage Runge-Kutta step, in place.
  void step(LagrangianState& X, double dt);

  /// Tolerance passed to the kernel monotonicity check; stage states are
  /// unconstrained intermediates and may undershoot by O(dt^2 h).
  void set_monotone_tol(double tol) { monotone_tol_ = tol; }

 private:
  std::size_t n_;
  double monotone_tol_ = 1e-12;
  KernelBundle pq_;
  KernelDensities dens_;
  std::vector<double> ys_;
  StateRate k1_, k2_, k3_, k4_;
  LagrangianState stage_;
};

LagrangianState step_rk4(const LagrangianState& X, double dt);

/// Monotonicity tolerance used while stepping: near collapse the evolved
/// positions undershoot by a sizable fraction of one spacing (the front
/// crosses a cell within a step), which the kernel treats as flat; bigger
/// violations mean a corrupted state and still throw.
inline double stepping_monotone_tol(double h) { return std::max(1e-12, h); }

struct BreakingEvent {
  double time = 0.0;
  double xi_lo = 0.0, xi_hi = 0.0;
  double min_nu = 0.0;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double energy = 0.0;
  double min_nu = 0.0;
  double slope_residual = 0.0;
  double energy_residual = 0.0;
  bool breaking = false;  // event seen since the previous record
};

struct Trajectory {
  std::vector<double> times;
  std::vector<LagrangianState> states;
  std::vector<DiagnosticsRecord> diagnostics;
  std::vector<BreakingEvent> events;
  std::vector<std::string> warnings;

  const LagrangianState& last() const { return states.back(); }
};

struct EvolveOptions {
  double breaking_threshold = 1e-8;
  double residual_warn = 1e-4;
  bool store_states = true;
};

/// Fixed-step march to t_end, recording states and diagnostics every
/// `output_every` steps (and at the final time).  nu entries in [-1e-12, 0)
/// are flushed to zero after each step; a breaking event is logged when
/// min nu drops below the threshold.  Throws blowup on non-finite values.
Trajectory evolve(const LagrangianState& X0, double t_end, double dt,
                  std::size_t output_every, const EvolveOptions& opts = {});

struct CauchySnapshot {
  double t = 0.0;
  EulerianTriple e;
  DiagnosticsRecord diag;
  double mu_total = 0.0;  // measure of the full line, atoms included
};

struct CauchyOptions {
  /// Continue each output interval from the canonical representative (the
  /// projected semigroup, which is how the solution operator composes).
  /// Redistributes labels and keeps peaked profiles resolved on long runs,
  /// at the price of interpolation-level constraint residuals in the
  /// diagnostics.  Skipped while cells are collapsed beyond skip_below.
  bool reparametrize = false;
  double skip_below = 0.25;  // min nu under which projection is deferred
};

/// Full pipeline: transform in, evolve, canonical projection at output
/// times, transform out.
std::vector<CauchySnapshot> solve_cauchy(const EulerianTriple& e0,
                                         const UniformGrid& xi_grid,
                                         const UniformGrid& x_out, double t_end,
                                         double dt, std::size_t output_every,
                                         const CauchyOptions& opts = {});

struct SpaceTimeTestFn {
  std::function<double(double, double)> phi, phi_t, phi_x;
};

/// Weak-form residual of the velocity equation over the trajectory window:
/// | integral of (-u phi_t - (u^2/2 + P1) phi_x) dx dt - integral of
/// u0 phi(0,.) dx |, with P1 transported to the x-grid from the kernel
/// bundle.  phi must vanish near the window boundary (except t = 0).
double weak_residual_u(const Trajectory& traj, const UniformGrid& x_grid,
                       const SpaceTimeTestFn& phi);

/// L2 residual of the elliptic identity (1 - dxx) P1 = u^2 + u_x^2/2
/// + gamma^2/2 - gamma_x^2/2 on the x-grid, with a centered second
/// difference.  Expects a non-collapsed state (u_x = beta/nu).
double helmholtz_residual(const LagrangianState& X, const UniformGrid& x_grid);

}  // namespace m2ch
