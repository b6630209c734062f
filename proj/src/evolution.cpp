#include "m2ch/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "m2ch/errors.hpp"
#include "m2ch/numerics.hpp"
#include "m2ch/transform.hpp"

namespace m2ch {

void StateRate::resize(std::size_t n) {
  zeta.resize(n);
  U.resize(n);
  Gamma.resize(n);
  R.resize(n);
  H.resize(n);
  nu.resize(n);
  beta.resize(n);
  kappa.resize(n);
  delta.resize(n);
}

Stepper::Stepper(std::size_t n) : n_(n) {
  pq_.resize(n);
  dens_.resize(n);
  ys_.resize(n);
  k1_.resize(n);
  k2_.resize(n);
  k3_.resize(n);
  k4_.resize(n);
}

void Stepper::rhs(const LagrangianState& X, StateRate& dX) {
  const std::size_t n = X.size();
  dX.resize(n);
  compute_kernel_fields(X, pq_, dens_, ys_, monotone_tol_);

  const double* U = X.U.data();
  const double* G = X.Gamma.data();
  const double* R = X.R.data();
  const double* nu = X.nu.data();
  const double* beta = X.beta.data();
  const double* kappa = X.kappa.data();
  const double* delta = X.delta.data();
  const double* P1 = pq_.P1.data();
  const double* P2 = pq_.P2.data();
  const double* P3 = pq_.P3.data();
  const double* Q1 = pq_.Q1.data();
  const double* Q2 = pq_.Q2.data();
  const double* Q3 = pq_.Q3.data();

  for (std::size_t i = 0; i < n; ++i) {
    const double u = U[i], g = G[i], r = R[i];
    dX.zeta[i] = u;
    dX.U[i] = -Q1[i];
    dX.Gamma[i] = -Q2[i] - P3[i];
    dX.R[i] = -P2[i] - Q3[i];
    dX.H[i] = u * u * u - 2.0 * P1[i] * u - 2.0 * P2[i] * g - 2.0 * Q3[i] * g;
    dX.nu[i] = beta[i];
    dX.beta[i] = 0.5 * (u * u - 2.0 * r * r - 2.0 * P1[i]) * nu[i] + 0.5 * delta[i];
    dX.kappa[i] = -(P2[i] + Q3[i]) * nu[i] + r * beta[i];
    dX.delta[i] = (3.0 * u * u - 2.0 * P1[i] + 2.0 * g * g) * beta[i] -
                  (2.0 * u * Q1[i] + 2.0 * Q2[i] * g + 2.0 * P3[i] * g) * nu[i] -
                  2.0 * (P2[i] + Q3[i]) * kappa[i];
  }
}

namespace {

void stage_from(const LagrangianState& X, const StateRate& k, double c,
                LagrangianState& out) {
  const std::size_t n = X.size();
  out.grid = X.grid;
  auto apply = [&](const std::vector<double>& x, const std::vector<double>& v,
                   std::vector<double>& o) {
    o.resize(n);
    for (std::size_t i = 0; i < n; ++i) o[i] = x[i] + c * v[i];
  };
  apply(X.zeta, k.zeta, out.zeta);
  apply(X.U, k.U, out.U);
  apply(X.Gamma, k.Gamma, out.Gamma);
  apply(X.R, k.R, out.R);
  apply(X.H, k.H, out.H);
  apply(X.nu, k.nu, out.nu);
  apply(X.beta, k.beta, out.beta);
  apply(X.kappa, k.kappa, out.kappa);
  apply(X.delta, k.delta, out.delta);
}

void rk4_combine(LagrangianState& X, const StateRate& k1, const StateRate& k2,
                 const StateRate& k3, const StateRate& k4, double dt) {
  const double c = dt / 6.0;
  const std::size_t n = X.size();
  auto upd = [&](std::vector<double>& x, const std::vector<double>& a,
                 const std::vector<double>& b, const std::vector<double>& d,
                 const std::vector<double>& e) {
    for (std::size_t i = 0; i < n; ++i) x[i] += c * (a[i] + 2.0 * (b[i] + d[i]) + e[i]);
  };
  upd(X.zeta, k1.zeta, k2.zeta, k3.zeta, k4.zeta);
  upd(X.U, k1.U, k2.U, k3.U, k4.U);
  upd(X.Gamma, k1.Gamma, k2.Gamma, k3.Gamma, k4.Gamma);
  upd(X.R, k1.R, k2.R, k3.R, k4.R);
  upd(X.H, k1.H, k2.H, k3.H, k4.H);
  upd(X.nu, k1.nu, k2.nu, k3.nu, k4.nu);
  upd(X.beta, k1.beta, k2.beta, k3.beta, k4.beta);
  upd(X.kappa, k1.kappa, k2.kappa, k3.kappa, k4.kappa);
  upd(X.delta, k1.delta, k2.delta, k3.delta, k4.delta);
}

}  // namespace

void Stepper::step(LagrangianState& X, double dt) {
  rhs(X, k1_);
  stage_from(X, k1_, 0.5 * dt, stage_);
  rhs(stage_, k2_);
  stage_from(X, k2_, 0.5 * dt, stage_);
  rhs(stage_, k3_);
  stage_from(X, k3_, dt, stage_);
  rhs(stage_, k4_);
  rk4_combine(X, k1_, k2_, k3_, k4_, dt);
}

LagrangianState step_rk4(const LagrangianState& X, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::invalid_argument, "step_rk4: dt must be positive");
  LagrangianState out = X;
  Stepper s(X.size());
  s.step(out, dt);
  require_finite(out, "step_rk4");
  return out;
}

namespace {

// Quick blow-up screen; the full finite check runs at output times.
bool looks_finite(const LagrangianState& X) {
  double acc = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) acc += X.U[i] + X.H[i] + X.nu[i];
  return std::isfinite(acc);
}

DiagnosticsRecord make_record(const LagrangianState& X, double t, bool breaking) {
  ConstraintReport c = check_constraints(X);
  DiagnosticsRecord d;
  d.t = t;
  d.energy = total_energy(X);
  d.min_nu = c.min_nu;
  d.slope_residual = c.slope_residual;
  d.energy_residual = c.energy_residual;
  d.breaking = breaking;
  return d;
}

}  // namespace

Trajectory evolve(const LagrangianState& X0, double t_end, double dt,
                  std::size_t output_every, const EvolveOptions& opts) {
  if (!(dt > 0.0) || t_end < 0.0)
    throw Error(ErrorCode::invalid_argument, "evolve: need dt > 0 and t_end >= 0");
  if (output_every == 0) output_every = 1;
  require_finite(X0, "evolve initial state");

  Trajectory traj;
  LagrangianState X = X0;
  Stepper stepper(X.size());
  stepper.set_monotone_tol(stepping_monotone_tol(X.grid.h));

  auto record = [&](double t, bool breaking) {
    traj.times.push_back(t);
    if (opts.store_states) traj.states.push_back(X);
    DiagnosticsRecord d = make_record(X, t, breaking);
    traj.diagnostics.push_back(d);
    if (std::max(d.slope_residual, d.energy_residual) > opts.residual_warn)
      traj.warnings.push_back("constraint residual above " +
                              std::to_string(opts.residual_warn) + " at t=" +
                              std::to_string(t));
  };

  record(0.0, false);

  const auto total_steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
  bool breaking_since_output = false;
  bool in_breaking_episode = false;

  for (long long s = 0; s < total_steps; ++s) {
    const double t0 = static_cast<double>(s) * dt;
    const double step_dt = std::min(dt, t_end - t0);
    stepper.step(X, step_dt);
    const double t1 = std::min(t_end, static_cast<double>(s + 1) * dt);

    if (!looks_finite(X)) {
      ConstraintReport c = check_constraints(X);
      throw Error(ErrorCode::blowup,
                  "non-finite state at t=" + std::to_string(t1) +
                      " (min nu=" + std::to_string(c.min_nu) + ")");
    }

    double min_nu = X.nu[0];
    std::size_t lo = 0, hi = 0;
    bool below = false;
    for (std::size_t i = 0; i < X.size(); ++i) {
      double& v = X.nu[i];
      if (v < 0.0 && v >= -1e-12) v = 0.0;  // roundoff only
      if (v < min_nu) min_nu = v;
      if (v < opts.breaking_threshold) {
        if (!below) lo = i;
        hi = i;
        below = true;
      }
    }
    if (min_nu < opts.breaking_threshold) {
      breaking_since_output = true;
      if (!in_breaking_episode) {
        traj.events.push_back(
            {t1, X.grid.point(lo), X.grid.point(hi), min_nu});
        in_breaking_episode = true;
      }
    } else {
      in_breaking_episode = false;
    }

    if ((s + 1) % output_every == 0 || s + 1 == total_steps) {
      require_finite(X, "evolve output");
      record(t1, breaking_since_output);
      breaking_since_output = false;
    }
  }
  return traj;
}

std::vector<CauchySnapshot> solve_cauchy(const EulerianTriple& e0,
                                         const UniformGrid& xi_grid,
                                         const UniformGrid& x_out, double t_end,
                                         double dt, std::size_t output_every,
                                         const CauchyOptions& opts) {
  if (output_every == 0) output_every = 1;
  LagrangianState X = to_lagrangian(e0, xi_grid);
  Stepper stepper(X.size());
  stepper.set_monotone_tol(stepping_monotone_tol(xi_grid.h));

  std::vector<CauchySnapshot> out;
  const auto total_steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
  bool breaking_since_output = false;

  auto emit = [&](double t) {
    CauchySnapshot snap;
    snap.t = t;
    // the transform is constant on relabeling orbits, so the snapshot comes
    // straight from the evolved state; projecting first would resample H
    // across steep gradients and lose measure near collapse
    snap.e = to_eulerian(X, x_out);
    snap.diag = make_record(X, t, breaking_since_output);
    snap.mu_total = snap.e.mu.total();
    out.push_back(std::move(snap));
    breaking_since_output = false;
  };

  emit(0.0);
  for (long long s = 0; s < total_steps; ++s) {
    const double t0 = static_cast<double>(s) * dt;
    stepper.step(X, std::min(dt, t_end - t0));
    if (!looks_finite(X))
      throw Error(ErrorCode::blowup,
                  "non-finite state at t=" + std::to_string(t0 + dt));
    double min_nu = X.nu[0];
    for (std::size_t i = 0; i < X.size(); ++i) {
      double& v = X.nu[i];
      if (v < 0.0 && v >= -1e-12) v = 0.0;
      min_nu = std::min(min_nu, v);
    }
    if (min_nu < 1e-8) breaking_since_output = true;
    if ((s + 1) % static_cast<long long>(output_every) == 0 || s + 1 == total_steps) {
      emit(std::min(t_end, static_cast<double>(s + 1) * dt));
      // iterate the projected semigroup: continue from the canonical
      // representative unless cells are collapsed
      if (opts.reparametrize && s + 1 < total_steps && min_nu > opts.skip_below)
        X = project_canonical(X);
    }
  }
  return out;
}

namespace {

// Transport a label-sampled field to the x-grid along the characteristics.
std::vector<double> transport_to_grid(const LagrangianState& X,
                                      const std::vector<double>& field,
                                      const UniformGrid& x_grid) {
  std::vector<double> ys = X.y_points();
  for (std::size_t i = 1; i < ys.size(); ++i) ys[i] = std::max(ys[i], ys[i - 1]);
  std::vector<double> out(x_grid.n, 0.0);
  for (std::size_t j = 0; j < x_grid.n; ++j) {
    const double x = x_grid.point(j);
    if (x < ys.front() || x > ys.back()) continue;
    const std::size_t k = monotone_cell(ys, x);
    const double w = ys[k + 1] - ys[k];
    const double t = w > 0.0 ? (x - ys[k]) / w : 0.0;
    out[j] = field[k] + t * (field[k + 1] - field[k]);
  }
  return out;
}

}  // namespace

double weak_residual_u(const Trajectory& traj, const UniformGrid& x_grid,
                       const SpaceTimeTestFn& phi) {
  if (traj.times.size() < 2 || traj.states.empty())
    throw Error(ErrorCode::invalid_argument, "weak_residual_u: need a stored trajectory");

  const double t_end = traj.times.back();
  const double support_tol = 1e-10;
  for (double t : traj.times) {
    if (std::abs(phi.phi(t, x_grid.lo)) > support_tol ||
        std::abs(phi.phi(t, x_grid.hi)) > support_tol)
      throw Error(ErrorCode::domain_error,
                  "test function does not vanish at the spatial boundary");
  }
  for (std::size_t j = 0; j < x_grid.n; ++j) {
    if (std::abs(phi.phi(t_end, x_grid.point(j))) > support_tol)
      throw Error(ErrorCode::domain_error,
                  "test function does not vanish at the final time");
  }

  std::vector<double> time_integrand(traj.times.size());
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const LagrangianState& X = traj.states[k];
    const double t = traj.times[k];
    KernelBundle b = compute_kernel_fields(X, 1e-9);
    std::vector<double> u = transport_to_grid(X, X.U, x_grid);
    std::vector<double> P1 = transport_to_grid(X, b.P1, x_grid);
    std::vector<double> integrand(x_grid.n);
    for (std::size_t j = 0; j < x_grid.n; ++j) {
      const double x = x_grid.point(j);
      integrand[j] =
          -u[j] * phi.phi_t(t, x) - (0.5 * u[j] * u[j] + P1[j]) * phi.phi_x(t, x);
    }
    time_integrand[k] = trapezoid(integrand, x_grid.h);
  }

  // nonuniform trapezoid over the output times
  double space_time = 0.0;
  for (std::size_t k = 1; k < traj.times.size(); ++k)
    space_time += 0.5 * (traj.times[k] - traj.times[k - 1]) *
                  (time_integrand[k] + time_integrand[k - 1]);

  std::vector<double> initial(x_grid.n);
  std::vector<double> u0 = transport_to_grid(traj.states.front(), traj.states.front().U,
                                             x_grid);
  for (std::size_t j = 0; j < x_grid.n; ++j)
    initial[j] = u0[j] * phi.phi(0.0, x_grid.point(j));

  return std::abs(space_time - trapezoid(initial, x_grid.h));
}

double helmholtz_residual(const LagrangianState& X, const UniformGrid& x_grid) {
  std::vector<double> ux_label(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (X.nu[i] <= kFlatThreshold)
      throw Error(ErrorCode::domain_error,
                  "helmholtz_residual: collapsed cells present");
    ux_label[i] = X.beta[i] / X.nu[i];
  }
  std::vector<double> u = transport_to_grid(X, X.U, x_grid);
  std::vector<double> ux = transport_to_grid(X, ux_label, x_grid);
  std::vector<double> g = transport_to_grid(X, X.Gamma, x_grid);
  std::vector<double> gx = transport_to_grid(X, X.R, x_grid);

  // source of the elliptic identity, from the transported fields
  std::vector<double> rhs(x_grid.n);
  for (std::size_t j = 0; j < x_grid.n; ++j)
    rhs[j] = u[j] * u[j] + 0.5 * ux[j] * ux[j] + 0.5 * g[j] * g[j] -
             0.5 * gx[j] * gx[j];

  // P1 on the x-grid: resolvent kernel applied to the source (second
  // differences of values transported along characteristics would only
  // amplify interpolation noise)
  std::vector<double> P1 = exp_convolve(x_grid.points(), rhs, x_grid.h, 0.5, false);

  const double hx = x_grid.h;
  std::vector<double> res(x_grid.n - 2);
  for (std::size_t j = 1; j + 1 < x_grid.n; ++j) {
    const double lap = (P1[j + 1] - 2.0 * P1[j] + P1[j - 1]) / (hx * hx);
    res[j - 1] = P1[j] - lap - rhs[j];
  }
  return l2_norm(res, hx);
}

}  // namespace m2ch
