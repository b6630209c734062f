// Shared helpers for the test suites: deterministic random smooth states and
// scenario shortcuts.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "m2ch/measure.hpp"
#include "m2ch/scenario.hpp"
#include "m2ch/state.hpp"
#include "m2ch/transform.hpp"

namespace m2ch::testing {

// Smooth decaying field: a short random Fourier sum under a wide envelope.
inline std::vector<double> random_smooth_field(std::mt19937& rng, const UniformGrid& g,
                                               double amplitude) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int modes = 4;
  std::vector<double> a(modes), w(modes), p(modes);
  for (int k = 0; k < modes; ++k) {
    a[k] = amplitude * (2.0 * unif(rng) - 1.0) / modes;
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
}

// Random state with nondecreasing characteristic positions and smooth,
// decaying fields.  Not constrained to the invariant set; suitable for the
// kernel fast-vs-direct and norm-inequality checks.
inline LagrangianState random_state(unsigned seed, const UniformGrid& g,
                                    double amplitude = 1.0) {
  std::mt19937 rng(seed);
  LagrangianState X = LagrangianState::rest(g);
  X.U = random_smooth_field(rng, g, amplitude);
  X.Gamma = random_smooth_field(rng, g, amplitude);
  X.R = random_smooth_field(rng, g, amplitude);
  X.H = random_smooth_field(rng, g, amplitude);
  X.beta = random_smooth_field(rng, g, amplitude);
  X.kappa = random_smooth_field(rng, g, amplitude);
  std::vector<double> zp = random_smooth_field(rng, g, 0.4 * amplitude);
  // integrate a bounded slope field so y stays monotone
  double acc = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double slope = std::max(-0.8, std::min(0.8, zp[i]));
    if (i > 0) acc += 0.5 * g.h * (slope + std::max(-0.8, std::min(0.8, zp[i - 1])));
    X.zeta[i] = acc;
    X.nu[i] = 1.0 + slope;
  }
  std::vector<double> d = random_smooth_field(rng, g, amplitude);
  for (std::size_t i = 0; i < g.n; ++i) X.delta[i] = std::abs(d[i]);
  return X;
}

// Scaled copy with e_norm equal to target (derivative slots follow the
// vector-space scaling).
inline LagrangianState scaled_to_norm(const LagrangianState& X, double target) {
  const double norm = e_norm(X);
  const double c = norm > 0.0 ? target / norm : 0.0;
  return lin_comb(c, X, 0.0, LagrangianState::rest(X.grid));
}

inline EulerianTriple gaussian_triple(double amp_u, double amp_gamma, double width,
                                      double center, const UniformGrid& xg) {
  ScenarioConfig cfg;
  cfg.kind = ScenarioConfig::Kind::gaussian;
  cfg.amp_u = amp_u;
  cfg.amp_gamma = amp_gamma;
  cfg.width = width;
  cfg.center = center;
  return build_scenario(cfg, xg);
}

inline EulerianTriple peakon_triple(double c, double center, const UniformGrid& xg) {
  ScenarioConfig cfg;
  cfg.kind = ScenarioConfig::Kind::peakon;
  cfg.c = c;
  cfg.center = center;
  return build_scenario(cfg, xg);
}

inline EulerianTriple peakon_pair_triple(double c, double a, const UniformGrid& xg) {
  ScenarioConfig cfg;
  cfg.kind = ScenarioConfig::Kind::peakon_antipeakon;
  cfg.c = c;
  cfg.a = a;
  return build_scenario(cfg, xg);
}

// Smooth state with analytic derivative arrays and monotone y; satisfies the
// slope identity kappa = R * nu but not the full invariant set.  with_gamma
// false zeroes Gamma and R (whose nearest-sample composition is first order).
inline LagrangianState smooth_analytic_state(const UniformGrid& g,
                                             bool with_gamma = true) {
  LagrangianState X = LagrangianState::rest(g);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double xi = g.point(i);
    const double b = std::exp(-0.03 * xi * xi);
    const double db = -0.06 * xi * b;
    X.zeta[i] = 0.4 * std::tanh(0.3 * xi) * b;
    X.U[i] = 0.5 * b;
    X.Gamma[i] = with_gamma ? 0.3 * b * std::sin(0.4 * xi) : 0.0;
    X.R[i] = with_gamma ? 0.3 * (0.4 * b * std::cos(0.4 * xi) + db * std::sin(0.4 * xi)) : 0.0;
    X.H[i] = 1.0 + std::tanh(0.25 * xi);
    X.nu[i] = 1.0 + 0.4 * (0.3 / std::pow(std::cosh(0.3 * xi), 2) * b +
                           std::tanh(0.3 * xi) * db);
    X.beta[i] = 0.5 * db;
    X.kappa[i] = X.R[i] * X.nu[i];
    X.delta[i] = 0.25 / std::pow(std::cosh(0.25 * xi), 2);
  }
  return X;
}

}  // namespace m2ch::testing
