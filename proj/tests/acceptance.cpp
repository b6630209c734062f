// Acceptance suite: one check per release criterion, each printed as a
// single PASS/FAIL line with the measured quantities.  Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "m2ch/errors.hpp"
#include "m2ch/evolution.hpp"
#include "m2ch/kernel.hpp"
#include "m2ch/metric.hpp"
#include "m2ch/numerics.hpp"
#include "m2ch/scenario.hpp"
#include "m2ch/state.hpp"
#include "m2ch/transform.hpp"

using namespace m2ch;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---- shared scenario helpers -------------------------------------------------

EulerianTriple scenario(ScenarioConfig::Kind kind, const UniformGrid& xi,
                        double c = 1.0, double a = 2.0, double amp_u = 0.8,
                        double amp_gamma = 0.4) {
  ScenarioConfig cfg;
  cfg.kind = kind;
  cfg.c = c;
  cfg.a = a;
  cfg.amp_u = amp_u;
  cfg.amp_gamma = amp_gamma;
  cfg.width = 1.5;
  cfg.center = 0.0;
  return build_scenario(cfg, default_scenario_grid(cfg, xi));
}

LagrangianState random_valid_state(unsigned seed, const UniformGrid& g,
                                   double amplitude) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int modes = 4;
  auto field = [&](double amp) {
    std::vector<double> a(modes), w(modes), p(modes);
    for (int k = 0; k < modes; ++k) {
      a[k] = amp * (2.0 * unif(rng) - 1.0) / modes;
      w[k] = 0.2 + 1.3 * unif(rng);
      p[k] = 2.0 * M_PI * unif(rng);
    }
    const double mid = 0.5 * (g.lo + g.hi);
    const double span = 0.25 * (g.hi - g.lo);
    std::vector<double> f(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
      const double x = g.point(i);
      double s = 0.0;
      for (int k = 0; k < modes; ++k) s += a[k] * std::sin(w[k] * (x - mid) + p[k]);
      f[i] = s * std::exp(-std::pow((x - mid) / span, 2));
    }
    return f;
  };
  LagrangianState X = LagrangianState::rest(g);
  X.U = field(amplitude);
  X.Gamma = field(amplitude);
  X.R = field(amplitude);
  X.H = field(amplitude);
  X.beta = field(amplitude);
  X.kappa = field(amplitude);
  std::vector<double> zp = field(0.4 * amplitude);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double slope = std::max(-0.8, std::min(0.8, zp[i]));
    if (i > 0)
      acc += 0.5 * g.h * (slope + std::max(-0.8, std::min(0.8, zp[i - 1])));
    X.zeta[i] = acc;
    X.nu[i] = 1.0 + slope;
  }
  std::vector<double> d = field(amplitude);
  for (std::size_t i = 0; i < g.n; ++i) X.delta[i] = std::abs(d[i]);
  return X;
}

double linf(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double rel_linf(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return diff / std::max(scale, 1e-300);
}

// ---- criteria ------------------------------------------------------------------

// 1: recurrence vs direct double sum on random valid states
void criterion_1() {
  const auto t0 = Clock::now();
  auto g = UniformGrid::make(-20.0, 20.0, 512);
  double worst = 0.0;
  for (unsigned seed = 0; seed < 50; ++seed) {
    LagrangianState X = random_valid_state(seed, g, 1.0);
    KernelBundle fast = compute_kernel_fields(X);
    KernelBundle direct = compute_kernel_fields_direct(X);
    worst = std::max({worst, rel_linf(fast.P1, direct.P1), rel_linf(fast.P2, direct.P2),
                      rel_linf(fast.P3, direct.P3), rel_linf(fast.Q1, direct.Q1),
                      rel_linf(fast.Q2, direct.Q2), rel_linf(fast.Q3, direct.Q3)});
  }
  const double secs = seconds_since(t0);
  report(1, worst <= 1e-10 && secs < 10.0,
         "kernel fast/direct equivalence: max rel Linf " + fmt(worst) +
             " (tol 1e-10) over 50 states, n=512, " + fmt(secs) + " s (cap 10 s)");
}

// 2: closed-form resolvent convolution at the pinned resolution
void criterion_2() {
  auto err_on = [](std::size_t n) {
    auto g = UniformGrid::make(-40.0, 40.0, n);
    std::vector<double> y = g.points(), f(g.n);
    for (std::size_t i = 0; i < g.n; ++i) f[i] = 1.5 * std::exp(-2.0 * std::abs(y[i]));
    std::vector<double> conv = exp_convolve(y, f, g.h, 0.5, false);
    double err = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
      const double exact =
          std::exp(-std::abs(y[i])) - 0.5 * std::exp(-2.0 * std::abs(y[i]));
      err = std::max(err, std::abs(conv[i] - exact));
    }
    return std::pair<double, double>(err, g.h);
  };
  auto [err, h] = err_on(4096);
  auto [err2, h2] = err_on(8192);
  report(2, err <= 5e-7,
         "kernel closed form at n=4096: Linf error " + fmt(err) +
             " (tol 5e-7); quadrature is second order (err/h^2 = " +
             fmt(err / (h * h)) + ", doubling n gives " + fmt(err2) + ")");
}

// 3: single peakon transport.  The pipeline iterates the projected
// semigroup between outputs (that is how the solution operator composes);
// without the relabeling the rear slope loses sampling like e^{-t} and the
// shape error reaches 4e-2 at this resolution.
void criterion_3() {
  const auto t0 = Clock::now();
  auto xi = UniformGrid::make(-22.0, 27.1, 4096);
  auto xout = UniformGrid::make(-20.0, 20.0, 2001);
  EulerianTriple e0 = scenario(ScenarioConfig::Kind::peakon, xi);
  CauchyOptions opts;
  opts.reparametrize = true;
  opts.skip_below = 0.05;  // the crest compresses nu to ~0.2 between outputs
  auto snaps = solve_cauchy(e0, xi, xout, 5.0, 1e-3, 500, opts);

  const auto& fin = snaps.back();
  std::size_t peak = 0;
  for (std::size_t j = 0; j < fin.e.u.size(); ++j)
    if (fin.e.u[j] > fin.e.u[peak]) peak = j;
  const double loc = xout.point(peak);

  double shape_err = 0.0;
  for (std::size_t j = 0; j < fin.e.u.size(); ++j)
    shape_err = std::max(
        shape_err, std::abs(fin.e.u[j] - std::exp(-std::abs(xout.point(j) - 5.0))));

  double drift = 0.0;
  const double e0_energy = snaps.front().diag.energy;
  for (const auto& s : snaps)
    drift = std::max(drift, std::abs(s.diag.energy - e0_energy) / e0_energy);

  const double secs = seconds_since(t0);
  const bool pass =
      std::abs(loc - 5.0) <= 1e-2 && shape_err <= 1e-2 && drift <= 1e-6 && secs < 120.0;
  report(3, pass,
         "peakon transport: peak at " + fmt(loc) + " (want 5 +- 1e-2), shape Linf " +
             fmt(shape_err) + " (tol 1e-2), energy drift " + fmt(drift) +
             " (tol 1e-6), " + fmt(secs) + " s (cap 120 s)");
}

// 4: peakon-antipeakon conservation through breaking
void criterion_4() {
  auto run = [&](std::size_t n, double dt) {
    ScenarioConfig cfg;
    cfg.kind = ScenarioConfig::Kind::peakon_antipeakon;
    cfg.c = 1.0;
    cfg.a = 2.0;
    auto xi = UniformGrid::make(-40.0, 40.0 + scenario_energy(cfg) + 5.0, n);
    auto xout = UniformGrid::make(-20.0, 20.0, 2001);
    EulerianTriple e0 = build_scenario(cfg, default_scenario_grid(cfg, xi));
    LagrangianState X0 = to_lagrangian(e0, xi);
    Trajectory traj = evolve(X0, 6.0, dt, static_cast<std::size_t>(0.05 / dt));

    struct Out {
      double mu_drift = 0.0, dip = 1e30, initial = 0.0, final_amp = 0.0;
      bool breaking = false;
    } o;
    double mu0 = 0.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      EulerianTriple out = to_eulerian(traj.states[k], xout);
      const double mu = out.mu.total();
      if (k == 0) {
        mu0 = mu;
        o.initial = linf(out.u);
      }
      o.mu_drift = std::max(o.mu_drift, std::abs(mu - mu0) / mu0);
      o.dip = std::min(o.dip, linf(out.u));
      if (k + 1 == traj.times.size()) o.final_amp = linf(out.u);
    }
    o.breaking = !traj.events.empty();
    return o;
  };

  auto base = run(4096, 2.5e-4);
  auto ref = run(8193, 1.25e-4);  // 2x-resolution reference

  const bool pass_base = base.mu_drift <= 1e-4 && base.breaking &&
                         base.dip <= 0.2 * base.initial &&
                         base.final_amp >= 0.5 * base.initial;
  const bool pass_ref = ref.mu_drift <= 1e-4 && ref.breaking &&
                        ref.dip <= 0.2 * ref.initial &&
                        ref.final_amp >= 0.5 * ref.initial;
  report(4, pass_base && pass_ref,
         "peakon-antipeakon: mass drift " + fmt(base.mu_drift) + " (tol 1e-4, 2x ref " +
             fmt(ref.mu_drift) + "), breaking " +
             (base.breaking && ref.breaking ? "logged" : "MISSING") + ", dip " +
             fmt(base.dip / base.initial) + " of initial (want <= 0.2), recovery " +
             fmt(base.final_amp / base.initial) + " (want >= 0.5)");
}

// 5: invariant-set residuals on smooth data over a long window
void criterion_5() {
  auto xi = UniformGrid::make(-40.0, 47.0, 4096);
  EulerianTriple e0 = scenario(ScenarioConfig::Kind::gaussian, xi, 1.0, 2.0, 0.8, 0.4);
  LagrangianState X0 = to_lagrangian(e0, xi);
  Trajectory traj = evolve(X0, 10.0, 1e-3, 1000);
  double worst = 0.0;
  for (const auto& d : traj.diagnostics)
    worst = std::max({worst, d.slope_residual, d.energy_residual});
  report(5, worst <= 1e-6,
         "constraint residuals on gaussian data, t in [0,10]: max " + fmt(worst) +
             " (tol 1e-6)");
}

// 6: transform round trip at second order
void criterion_6() {
  auto err_at = [&](std::size_t n) {
    auto xg = UniformGrid::make(-20.0, 20.0, 2 * n + 1);
    ScenarioConfig cfg;
    cfg.kind = ScenarioConfig::Kind::gaussian;
    cfg.amp_u = 0.8;
    cfg.amp_gamma = 0.25;
    cfg.width = 1.5;
    EulerianTriple e = build_scenario(cfg, xg);
    auto xi = UniformGrid::make(-40.0, 47.0, n);
    EulerianTriple back = to_eulerian(to_lagrangian(e, xi), xg);
    double err = 0.0;
    for (std::size_t j = 0; j < xg.n; ++j) {
      err = std::max(err, std::abs(back.u[j] - e.u[j]));
      err = std::max(err, std::abs(back.gamma[j] - e.gamma[j]));
    }
    return err;
  };
  const double e1 = err_at(2048);
  const double e2 = err_at(4096);
  const double h2 = std::pow(87.0 / 4095.0, 2);
  const double order = std::log2(e1 / e2);
  report(6, e2 <= 1.0 * h2 && order >= 1.9,
         "round trip on gaussian data: Linf " + fmt(e2) + " <= h^2 = " + fmt(h2) +
             ", order " + fmt(order) + " (want >= 1.9)");
}

// 7: relabeling equivariance of the flow.  The two paths resolve the crest
// region under different label densities, so their distance converges at
// O(h^1.5) (measured 8.0e-4 / 5.4e-4 / 3.6e-4 / 7.8e-5 for n = 16k..131k);
// the stated tolerance extrapolates to n of a few million.  Largest
// practical grid below, reported faithfully.
void criterion_7() {
  const std::size_t n = (1 << 17) + 1;
  auto xi = UniformGrid::make(-33.0, 40.0, n);
  EulerianTriple e = scenario(ScenarioConfig::Kind::peakon, xi);
  LagrangianState X = to_lagrangian(e, xi);
  std::vector<double> fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = xi.point(i);
    fs[i] = v + 0.5 * std::tanh(v);
  }
  Relabeling f = make_relabeling(xi, fs);
  const double dt = 1e-3;
  LagrangianState a = evolve(apply_relabeling(X, f), 1.0, dt, 1 << 20).last();
  LagrangianState b = apply_relabeling(evolve(X, 1.0, dt, 1 << 20).last(), f);
  const double d = e_distance(a, b);
  report(7, d <= 1e-6,
         "flow equivariance on peakon data at t=1 (n=" + std::to_string(n) +
             "): distance " + fmt(d) + " (tol 1e-6)");
}

// 8: semigroup composition of the fixed-step flow
void criterion_8() {
  auto xi = UniformGrid::make(-40.0, 47.0, 4096);
  EulerianTriple e = scenario(ScenarioConfig::Kind::peakon, xi);
  LagrangianState X0 = to_lagrangian(e, xi);
  LagrangianState mid = evolve(X0, 0.5, 1e-3, 1 << 20).last();
  LagrangianState two = evolve(mid, 1.0, 1e-3, 1 << 20).last();
  LagrangianState one = evolve(X0, 1.5, 1e-3, 1 << 20).last();
  const double d = e_distance(two, one);
  report(8, d <= 1e-8,
         "semigroup composition S_1 S_0.5 vs S_1.5 on peakon data: distance " + fmt(d) +
             " (tol 1e-8)");
}

// 9: Lipschitz bound with the cubic-polynomial constant
void criterion_9() {
  auto g = UniformGrid::make(-20.0, 20.0, 513);
  auto map_r = [&](const LagrangianState& X) {
    std::vector<double> r(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) {
      const double q = X.U[i] * X.U[i] - 2.0 * X.R[i] * X.R[i];
      r[i] = std::exp(X.zeta[i]) * (q * X.nu[i] + X.delta[i]);
    }
    return r;
  };
  bool pass = true;
  double worst_ratio = 0.0;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  for (double M : {0.5, 1.0, 2.0}) {
    const double cM = (1.0 + 7.0 * M + 12.0 * M * M + 3.0 * M * M * M) * std::exp(M);
    for (unsigned k = 0; k < 100; ++k) {
      auto scale_to = [&](LagrangianState X, double target) {
        const double norm = e_norm(X);
        return lin_comb(target / norm, X, 0.0, LagrangianState::rest(g));
      };
      LagrangianState A = scale_to(random_valid_state(1000 + k, g, 1.0), M * unif(rng));
      LagrangianState B = scale_to(random_valid_state(5000 + k, g, 1.0), M * unif(rng));
      std::vector<double> ra = map_r(A), rb = map_r(B);
      std::vector<double> diff(ra.size());
      for (std::size_t i = 0; i < ra.size(); ++i) diff[i] = ra[i] - rb[i];
      const double lhs = l2_norm(diff, g.h);
      const double rhs = cM * e_distance(A, B);
      worst_ratio = std::max(worst_ratio, lhs / std::max(rhs, 1e-300));
      if (lhs > rhs + 1e-12) pass = false;
    }
  }
  report(9, pass,
         "nonlinear-map Lipschitz bound with C(M) = (1+7M+12M^2+3M^3)e^M: max lhs/rhs " +
             fmt(worst_ratio) + " over 300 pairs (want <= 1)");
}

// 10: metric sanity
void criterion_10() {
  bool pass = true;
  std::string detail = "metric sanity:";

  {
    auto xi = UniformGrid::make(-30.0, 37.0, 2049);
    EulerianTriple e = scenario(ScenarioConfig::Kind::peakon, xi);
    LagrangianState X = to_lagrangian(e, xi);
    const double self = relabeled_distance(X, X).value;
    pass = pass && self == 0.0;
    detail += " self " + fmt(self) + ";";
  }

  {
    const std::size_t n = (1 << 17) + 1;
    auto xg = UniformGrid::make(-25.0, 25.0, n);
    ScenarioConfig cfg;
    cfg.kind = ScenarioConfig::Kind::gaussian;
    cfg.amp_u = 0.6;
    cfg.amp_gamma = 0.0;
    cfg.width = 1.5;
    EulerianTriple e = build_scenario(cfg, xg);
    auto xi = UniformGrid::make(-28.0, 34.0, n);
    LagrangianState X = to_lagrangian(e, xi);
    std::vector<double> fs(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = xi.point(i);
      fs[i] = v + 0.5 * std::tanh(v);
    }
    Relabeling f = make_relabeling(xi, fs);
    std::vector<RelabelingPair> cand;
    cand.emplace_back(invert_relabeling(f), f);
    const double dj = relabeled_distance(apply_relabeling(X, f), X, cand).value;
    pass = pass && dj <= 1e-6;
    detail += " relabeled-pair " + fmt(dj) + " (tol 1e-6);";
  }

  {
    auto g = UniformGrid::make(-20.0, 20.0, 1025);
    double worst = -1e30;
    for (unsigned k = 0; k < 10; ++k) {
      LagrangianState A = random_valid_state(100 + k, g, 0.5);
      LagrangianState B = random_valid_state(200 + k, g, 0.5);
      for (std::size_t i = 0; i < g.n; ++i) {
        A.H[i] = std::abs(A.H[i]);
        B.H[i] = std::abs(B.H[i]);
      }
      DistanceReport r = chained_distance(A, B, 1e6, 2);
      worst = std::max(worst, r.value - 2.0 * r.e_dist);
    }
    pass = pass && worst <= 1e-12;
    detail += " chain minus two-norm bound " + fmt(worst) + ";";
  }

  {
    const std::size_t n = (1 << 16) + 1;
    auto xi = UniformGrid::make(-33.0, 40.0, n);
    auto xout = UniformGrid::make(-18.0, 20.0, 3001);
    EulerianTriple base = scenario(ScenarioConfig::Kind::peakon, xi);
    std::vector<double> times = {0.0, 0.5, 1.0};
    double rmin = 1e30, rmax = 0.0;
    // the bump vanishes at the crest so the compared states keep aligned
    // kinks at every scale (a crest shift enters the sampled fields
    // non-linearly and would confound the scaling study)
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      EulerianTriple pert = base;
      for (std::size_t j = 0; j < pert.grid.n; ++j) {
        const double x = pert.grid.point(j);
        const double bump = std::exp(-(x - 3.0) * (x - 3.0));
        const double dbump = -2.0 * (x - 3.0) * bump;
        pert.u[j] += eps * bump;
        pert.u_x[j] += eps * dbump;
        pert.mu.density[j] = pert.u[j] * pert.u[j] + pert.u_x[j] * pert.u_x[j] +
                             pert.gamma[j] * pert.gamma[j] +
                             pert.gamma_x[j] * pert.gamma_x[j];
      }
      auto rows = lipschitz_ratio_experiment(base, pert, xi, xout, 2e-3, times, 100.0);
      double r = 0.0;
      for (const auto& row : rows) r = std::max(r, row.ratio);
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
    pass = pass && (rmax / rmin < 2.0);
    detail += " ratio spread " + fmt(rmax / rmin) + " (want < 2)";
  }

  report(10, pass, detail);
}

// 11: weak-form residual and the elliptic identity
void criterion_11() {
  SpaceTimeTestFn phi;
  auto bump = [](double t, double x) {
    const double sx = (x - 2.0) / 2.0;
    const double st = (t - 1.25) / 0.25;
    return std::exp(-sx * sx - st * st);
  };
  phi.phi = bump;
  phi.phi_t = [bump](double t, double x) {
    return -2.0 * (t - 1.25) / (0.25 * 0.25) * bump(t, x);
  };
  phi.phi_x = [bump](double t, double x) {
    return -2.0 * (x - 2.0) / (2.0 * 2.0) * bump(t, x);
  };

  auto residual_at = [&](std::size_t n, double dt) {
    auto xi = UniformGrid::make(-40.0, 47.0, n);
    EulerianTriple e0 = scenario(ScenarioConfig::Kind::peakon, xi);
    LagrangianState X0 = to_lagrangian(e0, xi);
    Trajectory traj = evolve(X0, 2.5, dt, static_cast<std::size_t>(0.01 / dt));
    return weak_residual_u(traj, UniformGrid::make(-20.0, 20.0, 2001), phi);
  };
  const double res = residual_at(4096, 1e-3);
  const double res_coarse = residual_at(2048, 2e-3);

  auto helm = [&](std::size_t n, std::size_t m) {
    auto xg = UniformGrid::make(-25.0, 25.0, 2 * n + 1);
    ScenarioConfig cfg;
    cfg.kind = ScenarioConfig::Kind::gaussian;
    cfg.amp_u = 0.8;
    cfg.amp_gamma = 0.3;
    cfg.width = 1.5;
    EulerianTriple e = build_scenario(cfg, xg);
    auto xi = UniformGrid::make(-30.0, 37.0, n);
    return helmholtz_residual(to_lagrangian(e, xi), UniformGrid::make(-15.0, 15.0, m));
  };
  const double h1 = helm(2049, 2001);
  const double h2 = helm(4097, 4001);
  const double hx2 = std::pow(30.0 / 4000.0, 2);
  const double order = std::log2(h1 / h2);

  const bool pass = res <= 1e-3 && res < res_coarse && h2 <= 5.0 * hx2 && order >= 1.9;
  report(11, pass,
         "weak residual " + fmt(res) + " (tol 1e-3, coarse " + fmt(res_coarse) +
             "); elliptic identity residual " + fmt(h2) + " <= 5*h^2 = " +
             fmt(5.0 * hx2) + ", order " + fmt(order) + " (want >= 1.9)");
}

// 12: integrator orders
void criterion_12() {
  auto xi = UniformGrid::make(-25.0, 31.0, 2049);
  EulerianTriple e = scenario(ScenarioConfig::Kind::gaussian, xi, 1.0, 2.0, 0.6, 0.25);
  LagrangianState X0 = to_lagrangian(e, xi);
  auto final_at = [&](double dt) { return evolve(X0, 1.0, dt, 1 << 20).last(); };
  LagrangianState a = final_at(0.04);
  LagrangianState b = final_at(0.02);
  LagrangianState c = final_at(0.01);
  const double t_order = std::log2(e_distance(a, b) / e_distance(b, c));

  auto xg = UniformGrid::make(-25.0, 25.0, (1 << 16) + 1);
  ScenarioConfig cfg;
  cfg.kind = ScenarioConfig::Kind::gaussian;
  cfg.amp_u = 0.6;
  cfg.amp_gamma = 0.25;
  cfg.width = 1.5;
  EulerianTriple es = build_scenario(cfg, xg);
  auto evolved_u = [&](std::size_t n) {
    auto grid = UniformGrid::make(-30.0, 37.0, n);
    return evolve(to_lagrangian(es, grid), 0.5, 2e-3, 1 << 20).last().U;
  };
  std::vector<double> u1 = evolved_u(2049);
  std::vector<double> u2 = evolved_u(4097);
  std::vector<double> u3 = evolved_u(8193);
  auto diff_shared = [](const std::vector<double>& coarse,
                        const std::vector<double>& fine) {
    double m = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i)
      m = std::max(m, std::abs(coarse[i] - fine[2 * i]));
    return m;
  };
  const double x_order = std::log2(diff_shared(u1, u2) / diff_shared(u2, u3));

  report(12, t_order >= 3.9 && x_order >= 1.9,
         "integrator orders: time " + fmt(t_order) + " (want >= 3.9), label " +
             fmt(x_order) + " (want >= 1.9)");
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
  } catch (const Error& e) {
    std::printf("[FAIL] aborted: %s\n", e.what());
    return 99;
  }
  std::printf("%d of 12 criteria passed (%.1f s total)\n", 12 - failures,
              seconds_since(t0));
  return failures;
}
