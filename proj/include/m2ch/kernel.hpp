#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "m2ch/state.hpp"

namespace m2ch {

/// The six nonlocal fields entering the semilinear system.
struct KernelBundle {
  std::vector<double> P1, P2, P3, Q1, Q2, Q3;

  void resize(std::size_t n) {
    P1.resize(n);
    P2.resize(n);
    P3.resize(n);
    Q1.resize(n);
    Q2.resize(n);
    Q3.resize(n);
  }
};

/// Integrand densities of the kernel fields:
///   f1 = U^2*nu - 2 R^2*nu + delta,  f2 = R*beta,  f3 = Gamma*beta.
struct KernelDensities {
  std::vector<double> f1, f2, f3;

  void resize(std::size_t n) {
    f1.resize(n);
    f2.resize(n);
    f3.resize(n);
  }
};

void assemble_densities(const LagrangianState& X, KernelDensities& out);
KernelDensities assemble_densities(const LagrangianState& X);

/// coeff * integral of K(xi,eta) f(eta) d(eta) with
///   K = exp(-|y(xi)-y(eta)|)            for the even kernel, and
///   K = -sgn(xi-eta) exp(-|y(xi)-y(eta)|) for the odd (signed) kernel,
/// by the two-pass recurrence
///   A_i = e^{-(y_i-y_{i-1})} A_{i-1} + h/2 (e^{-(y_i-y_{i-1})} f_{i-1} + f_i),
/// B_i mirrored from the right, result coeff*(A+B) resp. coeff*(B-A).
/// Trapezoid weights throughout; y must be nondecreasing.  Steps y_i-y_{i-1}
/// in (-monotone_tol, 0) are treated as zero; anything lower throws.
void exp_convolve(std::span<const double> y, std::span<const double> f, double h,
                  double coeff, bool signed_kernel, std::vector<double>& out,
                  double monotone_tol = 1e-12);

std::vector<double> exp_convolve(std::span<const double> y, std::span<const double> f,
                                 double h, double coeff, bool signed_kernel,
                                 double monotone_tol = 1e-12);

/// All six fields from one density assembly; P1/Q1 use coeff 1/4, the rest 1/2.
void compute_kernel_fields(const LagrangianState& X, KernelBundle& out,
                           KernelDensities& scratch, std::vector<double>& y_scratch,
                           double monotone_tol = 1e-12);
KernelBundle compute_kernel_fields(const LagrangianState& X, double monotone_tol = 1e-12);

/// Reference implementation: explicit double sum with identical trapezoid
/// weights.  O(n^2); used as an oracle against the recurrence path.
KernelBundle compute_kernel_fields_direct(const LagrangianState& X,
                                          double monotone_tol = 1e-12);

/// Residuals of the derivative identities relating the kernel fields, e.g.
/// P1_xi = Q1*nu and Q1_xi = -f1/2 + P1*nu, with centered differences on the
/// left-hand sides.  Expected O(h^2) on smooth states.
struct KernelIdentityReport {
  double p1 = 0, q1 = 0, p2 = 0, q2 = 0, p3 = 0, q3 = 0;
  double max() const;
};

KernelIdentityReport check_kernel_identities(const LagrangianState& X,
                                             const KernelBundle& b);

}  // namespace m2ch
