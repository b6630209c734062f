#include "m2ch/scenario.hpp"

#include <cmath>
#include <functional>

#include "m2ch/errors.hpp"
#include "m2ch/numerics.hpp"

namespace m2ch {

namespace {

struct Fields {
  std::function<double(double)> u, u_x, gamma, gamma_x;
};

// one-sided at the kink so that squared-derivative densities stay correct
double sgn0(double x) { return x >= 0.0 ? 1.0 : -1.0; }

Fields scenario_fields(const ScenarioConfig& cfg) {
  using K = ScenarioConfig::Kind;
  switch (cfg.kind) {
    case K::zero:
    case K::atom: {
      auto z = [](double) { return 0.0; };
      return {z, z, z, z};
    }
    case K::peakon: {
      const double c = cfg.c, x0 = cfg.center;
      return {[c, x0](double x) { return c * std::exp(-std::abs(x - x0)); },
              [c, x0](double x) { return -sgn0(x - x0) * c * std::exp(-std::abs(x - x0)); },
              [](double) { return 0.0; },
              [](double) { return 0.0; }};
    }
    case K::peakon_antipeakon: {
      const double c = cfg.c, a = cfg.a;
      return {[c, a](double x) {
                return c * (std::exp(-std::abs(x + a)) - std::exp(-std::abs(x - a)));
              },
              [c, a](double x) {
                return c * (-sgn0(x + a) * std::exp(-std::abs(x + a)) +
                            sgn0(x - a) * std::exp(-std::abs(x - a)));
              },
              [](double) { return 0.0; },
              [](double) { return 0.0; }};
    }
    case K::gaussian: {
      const double au = cfg.amp_u, ag = cfg.amp_gamma, w = cfg.width, x0 = cfg.center;
      auto bump = [w, x0](double x) { return std::exp(-0.5 * (x - x0) * (x - x0) / (w * w)); };
      auto dbump = [w, x0, bump](double x) { return -(x - x0) / (w * w) * bump(x); };
      return {[au, bump](double x) { return au * bump(x); },
              [au, dbump](double x) { return au * dbump(x); },
              [ag, bump](double x) { return ag * bump(x); },
              [ag, dbump](double x) { return ag * dbump(x); }};
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown scenario kind");
}

}  // namespace

EulerianTriple build_scenario(const ScenarioConfig& cfg, const UniformGrid& grid) {
  Fields f = scenario_fields(cfg);
  EulerianTriple e = EulerianTriple::zero(grid);
  e.u_x.assign(grid.n, 0.0);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.point(i);
    e.u[i] = f.u(x);
    e.u_x[i] = f.u_x(x);
    e.gamma[i] = f.gamma(x);
    e.gamma_x[i] = f.gamma_x(x);
    e.mu.density[i] = e.u[i] * e.u[i] + e.u_x[i] * e.u_x[i] + e.gamma[i] * e.gamma[i] +
                      e.gamma_x[i] * e.gamma_x[i];
  }
  if (cfg.kind == ScenarioConfig::Kind::atom) {
    if (!(cfg.mass > 0.0))
      throw Error(ErrorCode::invalid_argument, "atom scenario needs positive mass");
    e.mu.atoms.push_back({cfg.location, cfg.mass});
  }
  return e;
}

double scenario_energy(const ScenarioConfig& cfg) {
  using K = ScenarioConfig::Kind;
  switch (cfg.kind) {
    case K::zero:
      return 0.0;
    case K::atom:
      return cfg.mass;
    case K::peakon:
      return 2.0 * cfg.c * cfg.c;
    case K::peakon_antipeakon:
      // 2 c^2 each minus the overlap integral of the pair
      return 4.0 * cfg.c * cfg.c * (1.0 - std::exp(-2.0 * cfg.a));
    case K::gaussian: {
      const double spi = std::sqrt(M_PI);
      const double w = cfg.width;
      const double amp2 = cfg.amp_u * cfg.amp_u + cfg.amp_gamma * cfg.amp_gamma;
      // integrals of the squared bump and its derivative
      return amp2 * (spi * w + 0.5 * spi / w);
    }
  }
  return 0.0;
}

UniformGrid default_scenario_grid(const ScenarioConfig& cfg, const UniformGrid& xi_grid) {
  // widest symmetric window the label domain can transport: characteristic
  // positions range over [xi_min, xi_max - energy]
  double extent =
      std::floor(std::min(-xi_grid.lo, xi_grid.hi - scenario_energy(cfg) - 1.0));
  extent = std::max(extent, 8.0);
  // power-of-two spacing puts dyadic-rational peak positions on nodes
  const double target = 0.5 * xi_grid.h;
  double h = 1.0;
  while (h > target) h *= 0.5;
  const auto half = static_cast<std::size_t>(std::llround(extent / h));
  return UniformGrid::make(-extent, extent, 2 * half + 1);
}

UniformGrid default_label_grid(const ScenarioConfig& cfg, std::size_t n, double extent,
                               double margin) {
  return UniformGrid::make(-extent, extent + scenario_energy(cfg) + margin, n);
}

}  // namespace m2ch
