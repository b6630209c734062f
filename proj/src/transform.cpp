#include "m2ch/transform.hpp"

#include <algorithm>
#include <cmath>

#include "m2ch/errors.hpp"
#include "m2ch/numerics.hpp"

namespace m2ch {

namespace {

void require_increasing(std::span<const double> f, const char* what) {
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (!(f[i] > f[i - 1]))
      throw Error(ErrorCode::invalid_relabeling,
                  std::string(what) + ": samples not strictly increasing");
  }
}

// Inverse of a strictly increasing sampled map g on the grid, evaluated at x.
// Outside the sampled range the map is continued with unit slope (constant
// offset), which matches the constant extrapolation of the composed fields.
double inverse_at(const UniformGrid& grid, std::span<const double> g, double x) {
  if (x <= g.front()) return grid.lo - (g.front() - x);
  if (x >= g.back()) return grid.hi + (x - g.back());
  const std::size_t k = monotone_cell(g, x);
  const double t = (x - g[k]) / (g[k + 1] - g[k]);
  return grid.point(k) + t * grid.h;
}

std::vector<double> inverse_samples(const UniformGrid& grid, std::span<const double> g) {
  std::vector<double> inv(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) inv[i] = inverse_at(grid, g, grid.point(i));
  return inv;
}

}  // namespace

double relabeling_alpha(const UniformGrid& g, std::span<const double> f,
                        std::span<const double> slope) {
  std::vector<double> inv = inverse_samples(g, f);
  double fwd = 0.0, bwd = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    fwd = std::max(fwd, std::abs(f[i] - g.point(i)));
    fwd = std::max(fwd, std::abs(slope[i] - 1.0));
    bwd = std::max(bwd, std::abs(inv[i] - g.point(i)));
    const double s = interp_uniform(g, slope, inv[i], Extrapolation::clamp);
    bwd = std::max(bwd, std::abs(1.0 / s - 1.0));
  }
  return fwd + bwd;
}

Relabeling make_relabeling(const UniformGrid& g, std::vector<double> samples,
                           std::vector<double> slopes) {
  if (samples.size() != g.n || slopes.size() != g.n)
    throw Error(ErrorCode::invalid_relabeling, "relabeling sample count mismatch");
  if (!all_finite(samples) || !all_finite(slopes))
    throw Error(ErrorCode::invalid_relabeling, "relabeling samples must be finite");
  require_increasing(samples, "relabeling");
  for (double s : slopes)
    if (!(s > 0.0))
      throw Error(ErrorCode::invalid_relabeling, "relabeling slopes must be positive");
  Relabeling r;
  r.grid = g;
  r.f = std::move(samples);
  r.slope = std::move(slopes);
  r.alpha = relabeling_alpha(g, r.f, r.slope);
  return r;
}

Relabeling make_relabeling(const UniformGrid& g, std::vector<double> samples) {
  std::vector<double> slopes = difference_quotient(samples, g.h);
  return make_relabeling(g, std::move(samples), std::move(slopes));
}

Relabeling identity_relabeling(const UniformGrid& g) {
  return make_relabeling(g, g.points(), std::vector<double>(g.n, 1.0));
}

Relabeling invert_relabeling(const Relabeling& f) {
  std::vector<double> inv = inverse_samples(f.grid, f.f);
  std::vector<double> slopes(f.grid.n);
  for (std::size_t i = 0; i < f.grid.n; ++i)
    slopes[i] = 1.0 / interp_uniform(f.grid, f.slope, inv[i], Extrapolation::clamp);
  return make_relabeling(f.grid, std::move(inv), std::move(slopes));
}

Relabeling compose_relabelings(const Relabeling& f, const Relabeling& g) {
  if (!f.grid.same_as(g.grid))
    throw Error(ErrorCode::invalid_relabeling, "compose: grid mismatch");
  const UniformGrid& grid = f.grid;
  std::vector<double> out(grid.n), slopes(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = g.f[i];
    if (x <= grid.lo) {
      out[i] = f.f.front() - (grid.lo - x);
    } else if (x >= grid.hi) {
      out[i] = f.f.back() + (x - grid.hi);
    } else {
      out[i] = interp_uniform(grid, f.f, x, Extrapolation::clamp);
    }
    slopes[i] = interp_uniform(grid, f.slope, x, Extrapolation::clamp) * g.slope[i];
  }
  return make_relabeling(grid, std::move(out), std::move(slopes));
}

LagrangianState to_lagrangian(const EulerianTriple& e, const UniformGrid& xi_grid) {
  e.validate();
  const MeasureCdf cdf(e.mu);
  const double total = cdf.total();

  // domain-truncation rule: the label grid must reach the data on the left
  // and the data plus total energy on the right
  if (xi_grid.lo > cdf.support_lo() || xi_grid.hi < cdf.support_hi() + total)
    throw Error(ErrorCode::domain_error,
                "label grid does not cover the data domain plus total energy");

  // atom plateaus in the label variable: (G(loc), G(loc)+mass]
  struct Plateau {
    double lo, hi, location;
  };
  std::vector<Plateau> plateaus;
  for (const Atom& a : e.mu.atoms) {
    const double g = cdf.left_limit(a.location) + a.location;
    plateaus.push_back({g, g + a.mass, a.location});
  }
  std::sort(plateaus.begin(), plateaus.end(),
            [](const Plateau& a, const Plateau& b) { return a.lo < b.lo; });

  std::vector<double> ux_samples = e.u_x;
  if (ux_samples.empty()) ux_samples = difference_quotient(e.u, e.grid.h);

  const std::size_t n = xi_grid.n;
  LagrangianState X = LagrangianState::rest(xi_grid);

  const double eps_root = 1e-12;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = xi_grid.point(i);

    double y;
    bool on_plateau = false;
    double plateau_loc = 0.0;
    // exact affine tails outside the data support
    if (total == 0.0 || xi <= cdf.support_lo()) {
      y = xi;
    } else if (xi >= cdf.support_hi() + total) {
      y = xi - total;
    } else {
      for (const Plateau& p : plateaus) {
        if (xi > p.lo + eps_root && xi <= p.hi - eps_root) {
          on_plateau = true;
          plateau_loc = p.location;
          break;
        }
      }
      if (on_plateau) {
        y = plateau_loc;
      } else {
        // sup{ y : F(y) + y < xi } by bisection on the left-continuous map
        double lo = std::min(cdf.support_lo(), xi) - 1.0;
        double hi = std::max(cdf.support_hi(), xi - total) + 1.0;
        while (hi - lo > eps_root) {
          const double mid = 0.5 * (lo + hi);
          if (cdf.left_limit(mid) + mid < xi)
            lo = mid;
          else
            hi = mid;
        }
        y = 0.5 * (lo + hi);
      }
    }

    X.zeta[i] = y - xi;
    X.H[i] = -X.zeta[i];  // y + H = Id exactly at the samples
    X.U[i] = interp_uniform(e.grid, e.u, y, Extrapolation::zero);
    X.Gamma[i] = interp_uniform(e.grid, e.gamma, y, Extrapolation::zero);
    X.R[i] = interp_uniform(e.grid, e.gamma_x, y, Extrapolation::zero);

    if (on_plateau) {
      X.nu[i] = 0.0;
      X.delta[i] = 1.0;
      X.beta[i] = 0.0;
      X.kappa[i] = 0.0;
    } else {
      // nu = 1 / (1 + density at y), with the density rebuilt from the
      // composed samples so the invariant-set identities hold exactly at the
      // nodes.  u_x interpolates linearly; where that contradicts the
      // sampled density (a derivative jump inside the cell), its magnitude
      // is backed out of the density instead.
      const double dens = interp_uniform(e.grid, e.mu.density, y, Extrapolation::zero);
      const double squares =
          X.U[i] * X.U[i] + X.Gamma[i] * X.Gamma[i] + X.R[i] * X.R[i];
      double ux = interp_uniform(e.grid, ux_samples, y, Extrapolation::zero);
      if (std::abs(squares + ux * ux - dens) > 10.0 * e.grid.h * (1.0 + dens)) {
        const double ux2 = std::max(0.0, dens - squares);
        ux = std::copysign(std::sqrt(ux2), ux == 0.0 ? 1.0 : ux);
      }
      const double dens_used = squares + ux * ux;
      X.nu[i] = 1.0 / (1.0 + dens_used);
      X.delta[i] = 1.0 - X.nu[i];
      X.beta[i] = ux * X.nu[i];
      X.kappa[i] = X.R[i] * X.nu[i];
    }
  }
  return X;
}

namespace {

struct FlatRun {
  std::size_t a, b;  // node range [a, b], b > a
  double mass;       // H-increment across the run
  double location;   // common characteristic position
};

// Locates x within the nondecreasing characteristic positions; answers with
// the left-continuous generalized inverse so plateau mass stays excluded.
// Undershoots up to a fraction of the spacing are collapse artifacts of the
// evolved positions and are flattened; larger violations throw.
class CharacteristicLocator {
 public:
  explicit CharacteristicLocator(const LagrangianState& X)
      : CharacteristicLocator(X, std::max(1e-12, X.grid.h)) {}

  CharacteristicLocator(const LagrangianState& X, double monotone_tol)
      : grid_(X.grid), ys_(X.y_points()) {
    for (std::size_t i = 1; i < ys_.size(); ++i) {
      if (ys_[i] - ys_[i - 1] < -monotone_tol)
        throw Error(ErrorCode::monotonicity,
                    "characteristic positions decrease beyond tolerance");
      ys_[i] = std::max(ys_[i], ys_[i - 1]);
    }
  }

  double y_front() const { return ys_.front(); }
  double y_back() const { return ys_.back(); }
  const std::vector<double>& ys() const { return ys_; }

  // Linear transport of a sampled field to position x; out-of-range values
  // take `outside`.
  double value_at(double x, std::span<const double> v, double outside) const {
    if (x < ys_.front() || x > ys_.back()) return outside;
    std::size_t jl = first_at_or_above(x);
    if (ys_[jl] == x) return v[jl];
    const std::size_t k = jl - 1;
    const double w = ys_[k + 1] - ys_[k];
    const double t = w > 0.0 ? (x - ys_[k]) / w : 0.0;
    return v[k] + t * (v[k + 1] - v[k]);
  }

  // Label coordinate of the left-continuous inverse at x, as (cell, fraction).
  // Returns false when x is left of all characteristics.
  bool label_at(double x, std::size_t& k, double& t) const {
    if (x < ys_.front()) return false;
    if (x >= ys_.back()) {
      k = ys_.size() - 1;
      t = 0.0;
      return true;
    }
    std::size_t jl = first_at_or_above(x);
    if (ys_[jl] == x) {
      k = jl;
      t = 0.0;
      return true;
    }
    k = jl - 1;
    const double w = ys_[k + 1] - ys_[k];
    t = w > 0.0 ? (x - ys_[k]) / w : 0.0;
    return true;
  }

 private:
  std::size_t first_at_or_above(double x) const {
    auto it = std::lower_bound(ys_.begin(), ys_.end(), x);
    return static_cast<std::size_t>(it - ys_.begin());
  }

  UniformGrid grid_;
  std::vector<double> ys_;
};

}  // namespace

EulerianTriple to_eulerian(const LagrangianState& X, const UniformGrid& x_grid) {
  require_finite(X, "to_eulerian");
  const std::size_t n = X.size();
  const CharacteristicLocator loc(X);

  // The measure's cumulative is read off the stored H (the solver's own
  // energy integral), so total pushforward mass telescopes exactly to the
  // H-increment across the grid.
  // maximal runs of collapsed nodes -> atoms
  std::vector<FlatRun> runs;
  {
    std::size_t i = 0;
    while (i < n) {
      if (X.nu[i] <= kFlatThreshold) {
        std::size_t j = i;
        while (j + 1 < n && X.nu[j + 1] <= kFlatThreshold) ++j;
        if (j > i) {
          FlatRun r;
          r.a = i;
          r.b = j;
          r.mass = X.H[j] - X.H[i];
          r.location = loc.ys()[(i + j) / 2];
          if (r.mass > 0.0) runs.push_back(r);
        }
        i = j + 1;
      } else {
        ++i;
      }
    }
  }

  // absolutely continuous cumulative on the x-grid: H at the inverse label,
  // minus the mass of runs already passed
  const std::size_t m = x_grid.n;
  std::vector<double> M(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double x = x_grid.point(j);
    std::size_t k;
    double t;
    if (!loc.label_at(x, k, t)) {
      M[j] = 0.0;
      continue;
    }
    double c;
    if (k == n - 1) {
      c = X.H[n - 1] - X.H[0];
    } else {
      c = (X.H[k] + t * (X.H[k + 1] - X.H[k])) - X.H[0];
    }
    double runmass = 0.0;
    for (const FlatRun& r : runs) {
      if (r.b <= k) runmass += r.mass;
    }
    M[j] = c - runmass;
  }
  // an under-resolved front can leave local overshoots and dips in the
  // stored H; clip to the right-end value and flatten so the cumulative is
  // monotone, the density nonnegative, and its trapezoid still telescopes
  // to the full mass
  for (std::size_t j = 0; j < m; ++j) M[j] = std::min(M[j], M[m - 1]);
  for (std::size_t j = 1; j < m; ++j) M[j] = std::max(M[j], M[j - 1]);

  EulerianTriple e;
  e.grid = x_grid;
  e.u.resize(m);
  e.gamma.resize(m);
  e.gamma_x.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double x = x_grid.point(j);
    e.u[j] = loc.value_at(x, X.U, 0.0);
    e.gamma[j] = loc.value_at(x, X.Gamma, 0.0);
    e.gamma_x[j] = loc.value_at(x, X.R, 0.0);
  }

  // density by centered differences of the cumulative; the trapezoid of the
  // result telescopes back to M[m-1] - M[0], so mass is preserved exactly
  e.mu.grid = x_grid;
  e.mu.density.assign(m, 0.0);
  const double hx = x_grid.h;
  e.mu.density[0] = std::max(0.0, (M[1] - M[0]) / hx);
  e.mu.density[m - 1] = std::max(0.0, (M[m - 1] - M[m - 2]) / hx);
  for (std::size_t j = 1; j + 1 < m; ++j)
    e.mu.density[j] = std::max(0.0, (M[j + 1] - M[j - 1]) / (2.0 * hx));
  for (const FlatRun& r : runs) e.mu.atoms.push_back({r.location, r.mass});
  return e;
}

LagrangianState apply_relabeling(const LagrangianState& X, const Relabeling& f,
                                 bool repair_beta) {
  if (!X.grid.same_as(f.grid))
    throw Error(ErrorCode::invalid_relabeling, "apply_relabeling: grid mismatch");
  require_increasing(f.f, "apply_relabeling");
  const std::size_t n = X.size();
  const UniformGrid& g = X.grid;

  // Repair threshold for beta: interpolating it across a derivative jump (a
  // peaked crest inside a cell) breaks the energy identity by O(jump^2), a
  // fixed fraction of the state's scale.  States that do not satisfy the
  // identity in the first place are left alone.
  double repair_threshold = 0.0;
  if (repair_beta) {
    double src_residual = 0.0, state_scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double q = X.U[i] * X.U[i] + X.Gamma[i] * X.Gamma[i] + X.R[i] * X.R[i];
      const double nq = X.nu[i] * X.nu[i] * q;
      const double b2 = X.beta[i] * X.beta[i];
      src_residual = std::max(src_residual, std::abs(X.nu[i] * X.delta[i] - nq - b2));
      state_scale = std::max(state_scale, X.nu[i] * X.delta[i] + nq + b2);
    }
    repair_threshold = std::max(20.0 * src_residual, 1e-3 * state_scale) + 1e-300;
  }

  LagrangianState out = LagrangianState::rest(g);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = f.f[i];
    const double fp = f.slope[i];
    out.zeta[i] = interp_uniform(g, X.zeta, p, Extrapolation::clamp) + (p - g.point(i));
    out.U[i] = interp_uniform(g, X.U, p, Extrapolation::zero);
    out.Gamma[i] = interp_uniform(g, X.Gamma, p, Extrapolation::zero);
    out.R[i] = interp_nearest_uniform(g, X.R, p, Extrapolation::zero);
    out.H[i] = interp_uniform(g, X.H, p, Extrapolation::clamp);
    out.nu[i] = interp_uniform(g, X.nu, p, Extrapolation::clamp) * fp;
    out.beta[i] = interp_uniform(g, X.beta, p, Extrapolation::clamp) * fp;
    out.kappa[i] = interp_uniform(g, X.kappa, p, Extrapolation::clamp) * fp;
    out.delta[i] = interp_uniform(g, X.delta, p, Extrapolation::clamp) * fp;

    if (repair_beta) {
      const double q =
          out.U[i] * out.U[i] + out.Gamma[i] * out.Gamma[i] + out.R[i] * out.R[i];
      const double lhs = out.nu[i] * out.delta[i] - out.nu[i] * out.nu[i] * q;
      const double b2 = out.beta[i] * out.beta[i];
      if (lhs >= 0.0 && std::abs(lhs - b2) > repair_threshold * fp * fp)
        out.beta[i] = std::copysign(std::sqrt(lhs), out.beta[i]);
    }
  }
  return out;
}

LagrangianState project_canonical(const LagrangianState& X) {
  require_finite(X, "project_canonical");
  const std::size_t n = X.size();
  std::vector<double> g(n), gs(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = X.y(i) + X.H[i];
    gs[i] = X.nu[i] + X.delta[i];  // the stored Jacobian of y + H
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(g[i] > g[i - 1]))
      throw Error(ErrorCode::invalid_state,
                  "y + H must be strictly increasing to project");
  }
  return apply_relabeling(
      X, invert_relabeling(make_relabeling(X.grid, std::move(g), std::move(gs))),
      /*repair_beta=*/true);
}

}  // namespace m2ch
