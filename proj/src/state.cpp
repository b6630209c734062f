#include "m2ch/state.hpp"

#include <algorithm>
#include <cmath>

#include "m2ch/errors.hpp"
#include "m2ch/numerics.hpp"

namespace m2ch {

LagrangianState LagrangianState::rest(const UniformGrid& g) {
  LagrangianState X;
  X.grid = g;
  X.zeta.assign(g.n, 0.0);
  X.U.assign(g.n, 0.0);
  X.Gamma.assign(g.n, 0.0);
  X.R.assign(g.n, 0.0);
  X.H.assign(g.n, 0.0);
  X.nu.assign(g.n, 1.0);
  X.beta.assign(g.n, 0.0);
  X.kappa.assign(g.n, 0.0);
  X.delta.assign(g.n, 0.0);
  return X;
}

void require_finite(const LagrangianState& X, const char* where) {
  const bool ok = all_finite(X.zeta) && all_finite(X.U) && all_finite(X.Gamma) &&
                  all_finite(X.R) && all_finite(X.H) && all_finite(X.nu) &&
                  all_finite(X.beta) && all_finite(X.kappa) && all_finite(X.delta);
  if (!ok)
    throw Error(ErrorCode::invalid_state,
                std::string("non-finite entry in state (") + where + ")");
}

ConstraintReport check_constraints(const LagrangianState& X) {
  const std::size_t n = X.size();
  ConstraintReport r;
  r.min_nu = X.nu[0];
  r.min_delta = X.delta[0];
  r.min_nu_plus_delta = X.nu[0] + X.delta[0];
  r.h_at_left = X.H[0];
  for (std::size_t i = 0; i < n; ++i) {
    r.min_nu = std::min(r.min_nu, X.nu[i]);
    r.min_delta = std::min(r.min_delta, X.delta[i]);
    r.min_nu_plus_delta = std::min(r.min_nu_plus_delta, X.nu[i] + X.delta[i]);
    const double slope = std::abs(X.R[i] * X.nu[i] - X.kappa[i]);
    const double q = X.U[i] * X.U[i] + X.Gamma[i] * X.Gamma[i] + X.R[i] * X.R[i];
    const double energy =
        std::abs(X.nu[i] * X.delta[i] - X.nu[i] * X.nu[i] * q - X.beta[i] * X.beta[i]);
    r.slope_residual = std::max(r.slope_residual, slope);
    r.energy_residual = std::max(r.energy_residual, energy);
    if (i + 1 < n && X.H[i + 1] < X.H[i] - 1e-12) r.h_nondecreasing = false;
  }
  return r;
}

namespace {

// sup + L2 + derivative-L2; the sup term pins the discrete convention (a
// constant function of height c on a domain of length L has norm c + c*sqrt(L)).
double h1_norm(std::span<const double> f, std::span<const double> fx, double h) {
  return linf_norm(f) + l2_norm(f, h) + l2_norm(fx, h);
}

}  // namespace

double e_norm(const LagrangianState& X) {
  require_finite(X, "e_norm");
  const double h = X.grid.h;
  std::vector<double> zeta_xi(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) zeta_xi[i] = X.nu[i] - 1.0;
  double v_zeta = linf_norm(X.zeta) + l2_norm(zeta_xi, h);
  double v_H = linf_norm(X.H) + l2_norm(X.delta, h);
  double r = linf_norm(X.R) + l2_norm(X.R, h);
  return v_zeta + h1_norm(X.U, X.beta, h) + h1_norm(X.Gamma, X.kappa, h) + r + v_H;
}

double e_distance(const LagrangianState& A, const LagrangianState& B) {
  if (!A.grid.same_as(B.grid))
    throw Error(ErrorCode::invalid_argument, "e_distance: grid mismatch");
  return e_norm(lin_comb(1.0, A, -1.0, B));
}

double linf_distance(const LagrangianState& A, const LagrangianState& B) {
  if (!A.grid.same_as(B.grid))
    throw Error(ErrorCode::invalid_argument, "linf_distance: grid mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    m = std::max(m, std::abs(A.zeta[i] - B.zeta[i]));
    m = std::max(m, std::abs(A.U[i] - B.U[i]));
    m = std::max(m, std::abs(A.Gamma[i] - B.Gamma[i]));
    m = std::max(m, std::abs(A.R[i] - B.R[i]));
    m = std::max(m, std::abs(A.H[i] - B.H[i]));
  }
  return m;
}

double total_energy(const LagrangianState& X) { return X.H.back(); }

LagrangianState lin_comb(double a, const LagrangianState& A, double b,
                         const LagrangianState& B) {
  if (!A.grid.same_as(B.grid))
    throw Error(ErrorCode::invalid_argument, "lin_comb: grid mismatch");
  LagrangianState C;
  C.grid = A.grid;
  const std::size_t n = A.size();
  auto comb = [&](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = a * x[i] + b * y[i];
    return z;
  };
  C.zeta = comb(A.zeta, B.zeta);
  C.U = comb(A.U, B.U);
  C.Gamma = comb(A.Gamma, B.Gamma);
  C.R = comb(A.R, B.R);
  C.H = comb(A.H, B.H);
  C.nu.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    C.nu[i] = 1.0 + a * (A.nu[i] - 1.0) + b * (B.nu[i] - 1.0);
  C.beta = comb(A.beta, B.beta);
  C.kappa = comb(A.kappa, B.kappa);
  C.delta = comb(A.delta, B.delta);
  return C;
}

}  // namespace m2ch
