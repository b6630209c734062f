#include "m2ch/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "m2ch/errors.hpp"
#include "m2ch/numerics.hpp"

namespace m2ch {

void assemble_densities(const LagrangianState& X, KernelDensities& out) {
  const std::size_t n = X.size();
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.f1[i] = (X.U[i] * X.U[i] - 2.0 * X.R[i] * X.R[i]) * X.nu[i] + X.delta[i];
    out.f2[i] = X.R[i] * X.beta[i];
    out.f3[i] = X.Gamma[i] * X.beta[i];
  }
}

KernelDensities assemble_densities(const LagrangianState& X) {
  KernelDensities d;
  assemble_densities(X, d);
  return d;
}

namespace {

void check_monotone(std::span<const double> y, double tol) {
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (y[i] - y[i - 1] < -tol)
      throw Error(ErrorCode::monotonicity,
                  "characteristic positions decrease beyond tolerance");
  }
}

// Decay factors e^{-(y_i - y_{i-1})}, with tiny negative steps flattened.
void decay_factors(std::span<const double> y, std::vector<double>& w) {
  const std::size_t n = y.size();
  w.resize(n);
  w[0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = y[i] - y[i - 1];
    w[i] = std::exp(-std::max(d, 0.0));
  }
}

void convolve_passes(std::span<const double> w, std::span<const double> f, double h,
                     double coeff, bool signed_kernel, std::vector<double>& out) {
  const std::size_t n = f.size();
  out.resize(n);
  const double half_h = 0.5 * h;

  double A = 0.0;  // integral over (left end, xi_i] against e^{y(eta)-y_i}
  out[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    A = w[i] * (A + half_h * f[i - 1]) + half_h * f[i];
    out[i] = A;
  }

  double B = 0.0;  // integral over [xi_i, right end) against e^{y_i-y(eta)}
  if (signed_kernel) {
    out[n - 1] = coeff * (B - out[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) {
      B = w[i + 1] * (B + half_h * f[i + 1]) + half_h * f[i];
      out[i] = coeff * (B - out[i]);
    }
  } else {
    out[n - 1] = coeff * (B + out[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) {
      B = w[i + 1] * (B + half_h * f[i + 1]) + half_h * f[i];
      out[i] = coeff * (B + out[i]);
    }
  }
}

}  // namespace

void exp_convolve(std::span<const double> y, std::span<const double> f, double h,
                  double coeff, bool signed_kernel, std::vector<double>& out,
                  double monotone_tol) {
  if (y.size() != f.size() || y.size() < 2)
    throw Error(ErrorCode::invalid_argument, "exp_convolve: size mismatch");
  check_monotone(y, monotone_tol);
  std::vector<double> w;
  decay_factors(y, w);
  convolve_passes(w, f, h, coeff, signed_kernel, out);
}

std::vector<double> exp_convolve(std::span<const double> y, std::span<const double> f,
                                 double h, double coeff, bool signed_kernel,
                                 double monotone_tol) {
  std::vector<double> out;
  exp_convolve(y, f, h, coeff, signed_kernel, out, monotone_tol);
  return out;
}

void compute_kernel_fields(const LagrangianState& X, KernelBundle& out,
                           KernelDensities& scratch, std::vector<double>& y_scratch,
                           double monotone_tol) {
  const std::size_t n = X.size();
  y_scratch.resize(n);
  for (std::size_t i = 0; i < n; ++i) y_scratch[i] = X.y(i);
  check_monotone(y_scratch, monotone_tol);

  assemble_densities(X, scratch);
  std::vector<double> w;
  decay_factors(y_scratch, w);
  const double h = X.grid.h;
  convolve_passes(w, scratch.f1, h, 0.25, false, out.P1);
  convolve_passes(w, scratch.f1, h, 0.25, true, out.Q1);
  convolve_passes(w, scratch.f2, h, 0.5, false, out.P2);
  convolve_passes(w, scratch.f2, h, 0.5, true, out.Q2);
  convolve_passes(w, scratch.f3, h, 0.5, false, out.P3);
  convolve_passes(w, scratch.f3, h, 0.5, true, out.Q3);
}

KernelBundle compute_kernel_fields(const LagrangianState& X, double monotone_tol) {
  KernelBundle b;
  KernelDensities d;
  std::vector<double> ys;
  compute_kernel_fields(X, b, d, ys, monotone_tol);
  return b;
}

KernelBundle compute_kernel_fields_direct(const LagrangianState& X, double monotone_tol) {
  const std::size_t n = X.size();
  const double h = X.grid.h;
  std::vector<double> ys = X.y_points();
  check_monotone(ys, monotone_tol);
  KernelDensities d = assemble_densities(X);
  KernelBundle b;
  b.resize(n);

  const double half_h = 0.5 * h;
  for (std::size_t i = 0; i < n; ++i) {
    double a1 = 0, a2 = 0, a3 = 0;  // eta < xi side
    for (std::size_t j = 1; j <= i; ++j) {
      const double kl = std::exp(-std::max(ys[i] - ys[j - 1], 0.0));
      const double kr = std::exp(-std::max(ys[i] - ys[j], 0.0));
      a1 += half_h * (kl * d.f1[j - 1] + kr * d.f1[j]);
      a2 += half_h * (kl * d.f2[j - 1] + kr * d.f2[j]);
      a3 += half_h * (kl * d.f3[j - 1] + kr * d.f3[j]);
    }
    double b1 = 0, b2 = 0, b3 = 0;  // eta > xi side
    for (std::size_t j = i; j + 1 < n; ++j) {
      const double kl = std::exp(-std::max(ys[j] - ys[i], 0.0));
      const double kr = std::exp(-std::max(ys[j + 1] - ys[i], 0.0));
      b1 += half_h * (kl * d.f1[j] + kr * d.f1[j + 1]);
      b2 += half_h * (kl * d.f2[j] + kr * d.f2[j + 1]);
      b3 += half_h * (kl * d.f3[j] + kr * d.f3[j + 1]);
    }
    b.P1[i] = 0.25 * (a1 + b1);
    b.Q1[i] = 0.25 * (b1 - a1);
    b.P2[i] = 0.5 * (a2 + b2);
    b.Q2[i] = 0.5 * (b2 - a2);
    b.P3[i] = 0.5 * (a3 + b3);
    b.Q3[i] = 0.5 * (b3 - a3);
  }
  return b;
}

double KernelIdentityReport::max() const {
  return std::max({p1, q1, p2, q2, p3, q3});
}

KernelIdentityReport check_kernel_identities(const LagrangianState& X,
                                             const KernelBundle& b) {
  const std::size_t n = X.size();
  const double h = X.grid.h;
  KernelDensities d = assemble_densities(X);
  KernelIdentityReport r;
  // centered differences in the interior only
  for (std::size_t i = 1; i + 1 < n; ++i) {
    auto dd = [&](const std::vector<double>& v) { return (v[i + 1] - v[i - 1]) / (2.0 * h); };
    const double nu = X.nu[i];
    r.p1 = std::max(r.p1, std::abs(dd(b.P1) - b.Q1[i] * nu));
    r.q1 = std::max(r.q1, std::abs(dd(b.Q1) + 0.5 * d.f1[i] - b.P1[i] * nu));
    r.p2 = std::max(r.p2, std::abs(dd(b.P2) - b.Q2[i] * nu));
    r.q2 = std::max(r.q2, std::abs(dd(b.Q2) + d.f2[i] - b.P2[i] * nu));
    r.p3 = std::max(r.p3, std::abs(dd(b.P3) - b.Q3[i] * nu));
    r.q3 = std::max(r.q3, std::abs(dd(b.Q3) + d.f3[i] - b.P3[i] * nu));
  }
  return r;
}

}  // namespace m2ch
