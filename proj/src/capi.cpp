#include "m2ch.h"

#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include "m2ch/errors.hpp"
#include "m2ch/evolution.hpp"
#include "m2ch/metric.hpp"
#include "m2ch/numerics.hpp"
#include "m2ch/scenario.hpp"
#include "m2ch/transform.hpp"

using namespace m2ch;

namespace {

m2ch_status status_of(const Error& e) {
  switch (e.code()) {
    case ErrorCode::invalid_argument:
    case ErrorCode::invalid_relabeling:
      return M2CH_ERR_INVALID_ARGUMENT;
    case ErrorCode::domain_error:
    case ErrorCode::invalid_measure:
    case ErrorCode::invalid_state:
      return M2CH_ERR_DOMAIN;
    case ErrorCode::monotonicity:
    case ErrorCode::blowup:
      return M2CH_ERR_NUMERICAL;
    case ErrorCode::io_error:
      return M2CH_ERR_IO;
  }
  return M2CH_ERR_UNKNOWN;
}

void copy_message(const char* msg, char* buf, size_t len) {
  if (!buf || len == 0) return;
  std::strncpy(buf, msg, len - 1);
  buf[len - 1] = '\0';
}

struct BuiltScenario {
  EulerianTriple data;
  UniformGrid xi_grid;
};

BuiltScenario realize_scenario(const m2ch_params& p) {
  BuiltScenario out;
  if (p.scenario == M2CH_SCENARIO_CUSTOM) {
    if (!p.custom) throw Error(ErrorCode::invalid_argument, "custom scenario needs data");
    const m2ch_custom_data& c = *p.custom;
    if (!c.u || !c.gamma || c.m < 3)
      throw Error(ErrorCode::invalid_argument, "custom scenario needs u, gamma, m >= 3");
    UniformGrid g = UniformGrid::make(c.x_min, c.x_max, c.m);
    EulerianTriple e = EulerianTriple::zero(g);
    e.u.assign(c.u, c.u + c.m);
    e.gamma.assign(c.gamma, c.gamma + c.m);
    if (c.gamma_x)
      e.gamma_x.assign(c.gamma_x, c.gamma_x + c.m);
    else
      e.gamma_x = difference_quotient(e.gamma, g.h);
    if (c.u_x) e.u_x.assign(c.u_x, c.u_x + c.m);
    if (c.density) {
      e.mu.density.assign(c.density, c.density + c.m);
    } else {
      std::vector<double> ux = c.u_x ? e.u_x : difference_quotient(e.u, g.h);
      for (size_t i = 0; i < c.m; ++i)
        e.mu.density[i] = e.u[i] * e.u[i] + ux[i] * ux[i] + e.gamma[i] * e.gamma[i] +
                          e.gamma_x[i] * e.gamma_x[i];
    }
    for (size_t k = 0; k < c.atom_count; ++k)
      e.mu.atoms.push_back({c.atom_locations[k], c.atom_masses[k]});
    out.data = std::move(e);
    if (p.n == 0) {
      const double total = out.data.mu.total();
      out.xi_grid = UniformGrid::make(std::min(c.x_min, -40.0),
                                      std::max(c.x_max, 40.0) + total + 5.0, 4096);
    } else {
      out.xi_grid = UniformGrid::make(p.xi_min, p.xi_max, p.n);
    }
    return out;
  }

  ScenarioConfig cfg;
  switch (p.scenario) {
    case M2CH_SCENARIO_ZERO:
      cfg.kind = ScenarioConfig::Kind::zero;
      break;
    case M2CH_SCENARIO_PEAKON:
      cfg.kind = ScenarioConfig::Kind::peakon;
      break;
    case M2CH_SCENARIO_PEAKON_ANTIPEAKON:
      cfg.kind = ScenarioConfig::Kind::peakon_antipeakon;
      break;
    case M2CH_SCENARIO_GAUSSIAN:
      cfg.kind = ScenarioConfig::Kind::gaussian;
      break;
    case M2CH_SCENARIO_ATOM:
      cfg.kind = ScenarioConfig::Kind::atom;
      break;
    default:
      throw Error(ErrorCode::invalid_argument, "unknown scenario kind");
  }
  cfg.c = p.c;
  cfg.a = p.a;
  cfg.center = p.center;
  cfg.amp_u = p.amp_u;
  cfg.amp_gamma = p.amp_gamma;
  cfg.width = p.width;
  cfg.mass = p.mass;
  cfg.location = p.location;

  out.xi_grid = (p.n == 0) ? default_label_grid(cfg, 4096)
                           : UniformGrid::make(p.xi_min, p.xi_max, p.n);
  out.data = build_scenario(cfg, default_scenario_grid(cfg, out.xi_grid));
  return out;
}

}  // namespace

struct m2ch_sim {
  m2ch_params params{};
  UniformGrid xi_grid, x_grid;
  LagrangianState X;
  Stepper stepper;
  long long step_index = 0;
  long long total_steps = 0;
  double dt = 0.0;
  double t_end = 0.0;
  size_t output_every = 1;
  bool breaking_since_output = false;
  bool in_breaking_episode = false;
  double last_min_nu = 1.0;

  // current snapshot
  EulerianTriple snapshot;
  DiagnosticsRecord diag;
  double mu_total = 0.0;

  mutable std::string last_error;

  explicit m2ch_sim(const LagrangianState& X0) : X(X0), stepper(X0.size()) {}

  double time() const { return std::min(t_end, static_cast<double>(step_index) * dt); }

  void refresh_snapshot() {
    snapshot = to_eulerian(X, x_grid);
    ConstraintReport c = check_constraints(X);
    diag.t = time();
    diag.energy = total_energy(X);
    diag.min_nu = c.min_nu;
    diag.slope_residual = c.slope_residual;
    diag.energy_residual = c.energy_residual;
    diag.breaking = breaking_since_output;
    mu_total = snapshot.mu.total();
  }

  void advance_interval() {
    breaking_since_output = false;
    const long long target = std::min<long long>(
        total_steps, step_index + static_cast<long long>(output_every));
    for (; step_index < target; ++step_index) {
      const double t0 = static_cast<double>(step_index) * dt;
      stepper.step(X, std::min(dt, t_end - t0));
      double sum = 0.0;
      double min_nu = X.nu[0];
      for (std::size_t i = 0; i < X.size(); ++i) {
        double& v = X.nu[i];
        if (v < 0.0 && v >= -1e-12) v = 0.0;
        min_nu = std::min(min_nu, v);
        sum += X.U[i];
      }
      if (!std::isfinite(sum))
        throw Error(ErrorCode::blowup, "non-finite state during advance");
      if (min_nu < 1e-8) {
        breaking_since_output = true;
        in_breaking_episode = true;
      } else {
        in_breaking_episode = false;
      }
      last_min_nu = min_nu;
    }
    refresh_snapshot();
    // pause while a collapse front is steep: resampling there would trade
    // constraint accuracy for nothing
    if (params.reparametrize && step_index < total_steps && last_min_nu > 0.25)
      X = project_canonical(X);
  }
};

extern "C" {

m2ch_status m2ch_params_init(m2ch_params* p) {
  if (!p) return M2CH_ERR_INVALID_ARGUMENT;
  *p = m2ch_params{};
  p->scenario = M2CH_SCENARIO_PEAKON;
  p->c = 1.0;
  p->a = 2.0;
  p->center = 0.0;
  p->amp_u = 1.0;
  p->amp_gamma = 0.0;
  p->width = 1.0;
  p->mass = 1.0;
  p->location = 0.0;
  p->custom = nullptr;
  p->xi_min = 0.0;
  p->xi_max = 0.0;
  p->n = 0;  // auto: [-40, 40 + energy + 5] with 4096 samples
  p->dt = 1e-3;
  p->t_end = 1.0;
  p->output_every = 100;
  p->x_min = -20.0;
  p->x_max = 20.0;
  p->m = 2001;
  p->constraint_tol = 1e-6;
  p->energy_tol = 1e-6;
  p->reparametrize = 0;
  return M2CH_OK;
}

m2ch_sim* m2ch_sim_create(const m2ch_params* p, char* errbuf, size_t errbuf_len) {
  if (!p) {
    copy_message("null parameter block", errbuf, errbuf_len);
    return nullptr;
  }
  try {
    if (!(p->dt > 0.0) || p->t_end < 0.0)
      throw Error(ErrorCode::invalid_argument, "need dt > 0 and t_end >= 0");
    if (p->m < 3) throw Error(ErrorCode::invalid_argument, "output grid needs m >= 3");
    BuiltScenario sc = realize_scenario(*p);
    auto* sim = new m2ch_sim(to_lagrangian(sc.data, sc.xi_grid));
    sim->params = *p;
    sim->params.custom = nullptr;  // not retained
    sim->xi_grid = sc.xi_grid;
    sim->x_grid = UniformGrid::make(p->x_min, p->x_max, p->m);
    sim->dt = p->dt;
    sim->t_end = p->t_end;
    sim->output_every = p->output_every == 0 ? 1 : p->output_every;
    sim->total_steps = static_cast<long long>(std::ceil(p->t_end / p->dt - 1e-9));
    sim->stepper.set_monotone_tol(stepping_monotone_tol(sc.xi_grid.h));
    sim->refresh_snapshot();
    return sim;
  } catch (const Error& e) {
    copy_message(e.what(), errbuf, errbuf_len);
    return nullptr;
  } catch (const std::exception& e) {
    copy_message(e.what(), errbuf, errbuf_len);
    return nullptr;
  }
}

void m2ch_sim_destroy(m2ch_sim* sim) { delete sim; }

const char* m2ch_sim_last_error(const m2ch_sim* sim) {
  return sim ? sim->last_error.c_str() : "null handle";
}

double m2ch_sim_time(const m2ch_sim* sim) { return sim ? sim->time() : 0.0; }

int m2ch_sim_done(const m2ch_sim* sim) {
  return (sim && sim->step_index >= sim->total_steps) ? 1 : 0;
}

size_t m2ch_sim_label_count(const m2ch_sim* sim) { return sim ? sim->X.size() : 0; }

size_t m2ch_sim_output_count(const m2ch_sim* sim) { return sim ? sim->x_grid.n : 0; }

m2ch_status m2ch_sim_advance(m2ch_sim* sim) {
  if (!sim) return M2CH_ERR_INVALID_ARGUMENT;
  try {
    sim->advance_interval();
    return M2CH_OK;
  } catch (const Error& e) {
    sim->last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    sim->last_error = e.what();
    return M2CH_ERR_UNKNOWN;
  }
}

m2ch_status m2ch_sim_label_data(const m2ch_sim* sim, m2ch_label_field f, double* out,
                                size_t capacity) {
  if (!sim || !out) return M2CH_ERR_INVALID_ARGUMENT;
  const size_t n = sim->X.size();
  if (capacity < n) return M2CH_ERR_INVALID_ARGUMENT;
  const LagrangianState& X = sim->X;
  switch (f) {
    case M2CH_LABEL_XI:
      for (size_t i = 0; i < n; ++i) out[i] = X.grid.point(i);
      return M2CH_OK;
    case M2CH_LABEL_Y:
      for (size_t i = 0; i < n; ++i) out[i] = X.y(i);
      return M2CH_OK;
    case M2CH_LABEL_U:
      std::copy(X.U.begin(), X.U.end(), out);
      return M2CH_OK;
    case M2CH_LABEL_GAMMA:
      std::copy(X.Gamma.begin(), X.Gamma.end(), out);
      return M2CH_OK;
    case M2CH_LABEL_R:
      std::copy(X.R.begin(), X.R.end(), out);
      return M2CH_OK;
    case M2CH_LABEL_H:
      std::copy(X.H.begin(), X.H.end(), out);
      return M2CH_OK;
    case M2CH_LABEL_NU:
      std::copy(X.nu.begin(), X.nu.end(), out);
      return M2CH_OK;
    case M2CH_LABEL_BETA:
      std::copy(X.beta.begin(), X.beta.end(), out);
      return M2CH_OK;
    case M2CH_LABEL_KAPPA:
      std::copy(X.kappa.begin(), X.kappa.end(), out);
      return M2CH_OK;
    case M2CH_LABEL_DELTA:
      std::copy(X.delta.begin(), X.delta.end(), out);
      return M2CH_OK;
  }
  return M2CH_ERR_INVALID_ARGUMENT;
}

m2ch_status m2ch_sim_output_data(const m2ch_sim* sim, m2ch_output_field f, double* out,
                                 size_t capacity) {
  if (!sim || !out) return M2CH_ERR_INVALID_ARGUMENT;
  const size_t m = sim->x_grid.n;
  if (capacity < m) return M2CH_ERR_INVALID_ARGUMENT;
  switch (f) {
    case M2CH_OUTPUT_X:
      for (size_t i = 0; i < m; ++i) out[i] = sim->x_grid.point(i);
      return M2CH_OK;
    case M2CH_OUTPUT_U:
      std::copy(sim->snapshot.u.begin(), sim->snapshot.u.end(), out);
      return M2CH_OK;
    case M2CH_OUTPUT_GAMMA:
      std::copy(sim->snapshot.gamma.begin(), sim->snapshot.gamma.end(), out);
      return M2CH_OK;
    case M2CH_OUTPUT_MU_DENSITY:
      std::copy(sim->snapshot.mu.density.begin(), sim->snapshot.mu.density.end(), out);
      return M2CH_OK;
  }
  return M2CH_ERR_INVALID_ARGUMENT;
}

m2ch_status m2ch_sim_atom_count(const m2ch_sim* sim, size_t* count) {
  if (!sim || !count) return M2CH_ERR_INVALID_ARGUMENT;
  *count = sim->snapshot.mu.atoms.size();
  return M2CH_OK;
}

m2ch_status m2ch_sim_atoms(const m2ch_sim* sim, double* locations, double* masses,
                           size_t capacity) {
  if (!sim || !locations || !masses) return M2CH_ERR_INVALID_ARGUMENT;
  const auto& atoms = sim->snapshot.mu.atoms;
  if (capacity < atoms.size()) return M2CH_ERR_INVALID_ARGUMENT;
  for (size_t k = 0; k < atoms.size(); ++k) {
    locations[k] = atoms[k].location;
    masses[k] = atoms[k].mass;
  }
  return M2CH_OK;
}

m2ch_status m2ch_sim_diagnostics(const m2ch_sim* sim, m2ch_diagnostics* out) {
  if (!sim || !out) return M2CH_ERR_INVALID_ARGUMENT;
  out->t = sim->diag.t;
  out->total_energy = sim->diag.energy;
  out->mu_total = sim->mu_total;
  out->min_nu = sim->diag.min_nu;
  out->res_slope = sim->diag.slope_residual;
  out->res_energy = sim->diag.energy_residual;
  out->breaking = sim->diag.breaking ? 1 : 0;
  return M2CH_OK;
}

m2ch_status m2ch_check_state(const double* xi, const double* y, const double* u,
                             const double* gamma, const double* r, const double* h,
                             const double* nu, const double* beta, const double* kappa,
                             const double* delta, size_t n, double tol,
                             m2ch_constraint_report* out) {
  if (!xi || !y || !u || !gamma || !r || !h || !nu || !beta || !kappa || !delta || !out)
    return M2CH_ERR_INVALID_ARGUMENT;
  if (n < 3 || !(tol > 0.0)) return M2CH_ERR_INVALID_ARGUMENT;
  try {
    LagrangianState X;
    X.grid = UniformGrid::make(xi[0], xi[n - 1], n);
    X.zeta.resize(n);
    for (size_t i = 0; i < n; ++i) X.zeta[i] = y[i] - xi[i];
    X.U.assign(u, u + n);
    X.Gamma.assign(gamma, gamma + n);
    X.R.assign(r, r + n);
    X.H.assign(h, h + n);
    X.nu.assign(nu, nu + n);
    X.beta.assign(beta, beta + n);
    X.kappa.assign(kappa, kappa + n);
    X.delta.assign(delta, delta + n);
    ConstraintReport c = check_constraints(X);
    out->min_nu = c.min_nu;
    out->min_delta = c.min_delta;
    out->res_slope = c.slope_residual;
    out->res_energy = c.energy_residual;
    out->h_at_left = c.h_at_left;
    out->h_nondecreasing = c.h_nondecreasing ? 1 : 0;
    out->pass = c.pass(tol) ? 1 : 0;
    return M2CH_OK;
  } catch (const Error& e) {
    return status_of(e);
  } catch (...) {
    return M2CH_ERR_UNKNOWN;
  }
}

m2ch_status m2ch_metric_experiment(const m2ch_params* a, const m2ch_params* b,
                                   double energy_bound, m2ch_metric_row* rows,
                                   size_t rows_capacity, size_t* rows_written,
                                   char* errbuf, size_t errbuf_len) {
  if (!a || !b || !rows || !rows_written) return M2CH_ERR_INVALID_ARGUMENT;
  try {
    BuiltScenario sa = realize_scenario(*a);
    // the pair shares a's discretization
    m2ch_params bp = *b;
    bp.xi_min = a->xi_min;
    bp.xi_max = a->xi_max;
    bp.n = a->n;
    BuiltScenario sb = realize_scenario(bp);
    UniformGrid x_out = UniformGrid::make(a->x_min, a->x_max, a->m);

    std::vector<double> times;
    const auto total_steps = static_cast<long long>(std::ceil(a->t_end / a->dt - 1e-9));
    const auto every = static_cast<long long>(a->output_every == 0 ? 1 : a->output_every);
    for (long long s = 0; s <= total_steps; s += every)
      times.push_back(static_cast<double>(s) * a->dt);
    if (times.back() < a->t_end) times.push_back(a->t_end);

    std::vector<LipschitzRow> result = lipschitz_ratio_experiment(
        sa.data, sb.data, sa.xi_grid, x_out, a->dt, times, energy_bound);
    if (rows_capacity < result.size()) {
      copy_message("row buffer too small", errbuf, errbuf_len);
      return M2CH_ERR_INVALID_ARGUMENT;
    }
    for (size_t k = 0; k < result.size(); ++k) {
      rows[k].t = result[k].t;
      rows[k].distance = result[k].distance;
      rows[k].ratio = result[k].ratio;
      rows[k].zero_start = result[k].zero_start ? 1 : 0;
    }
    *rows_written = result.size();
    return M2CH_OK;
  } catch (const Error& e) {
    copy_message(e.what(), errbuf, errbuf_len);
    return status_of(e);
  } catch (const std::exception& e) {
    copy_message(e.what(), errbuf, errbuf_len);
    return M2CH_ERR_UNKNOWN;
  }
}

const char* m2ch_version(void) { return "1.0.0"; }

const char* m2ch_status_name(m2ch_status s) {
  switch (s) {
    case M2CH_OK:
      return "ok";
    case M2CH_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case M2CH_ERR_DOMAIN:
      return "domain error";
    case M2CH_ERR_NUMERICAL:
      return "numerical failure";
    case M2CH_ERR_IO:
      return "io error";
    case M2CH_ERR_UNKNOWN:
      return "unknown error";
  }
  return "unknown error";
}

}  // extern "C"
