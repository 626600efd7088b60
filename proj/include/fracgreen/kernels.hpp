#pragma once

#include <complex>

namespace fracgreen {

/// Single-relaxation time kernel
///   K(t) = t^{alpha-rho} * E_{alpha, alpha-rho+1}(-b t^alpha),
/// the inverse Sumudu transform of u^{alpha-rho} / (1 + b u^alpha).
///
/// rho selects which datum the kernel propagates: 1 for the order alpha-1
/// trace, 2 for the order alpha-2 trace. Requires t > 0 (kernels with
/// alpha < rho are singular at t = 0); tol is an absolute target on the
/// result, rescaled internally by the prefactor before evaluating E.
std::complex<double> kernel_single(double alpha, double rho,
                                   std::complex<double> b, double t,
                                   double tol = 1e-10);

/// Two-relaxation kernel for the two-order equation:
///   K(t) = sum_r (-lambda)^r t^{(alpha-beta) r + alpha - rho}
///          * E^{r+1}_{alpha, alpha+(alpha-beta) r - rho + 1}(-b t^alpha).
///
/// lambda = 0 short-circuits to kernel_single bit for bit; otherwise beta
/// must be strictly below alpha (the second order is the lower one). The r
/// series has no closed remainder bound; summation stops once three
/// consecutive summands fall below tol * |partial sum| and throws
/// SeriesDivergence when summand magnitudes grow for five consecutive r or
/// the r_max cap is hit while still unconverged (the growth ratio is roughly
/// |lambda| t^{alpha-beta}, reported in the message).
std::complex<double> kernel_two_term(double alpha, double beta, double lambda,
                                     double rho, std::complex<double> b,
                                     double t, double tol = 1e-10,
                                     int r_max = 64);

}
