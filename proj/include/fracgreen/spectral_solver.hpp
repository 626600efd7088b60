#pragma once

#include <complex>

#include "fracgreen/fields.hpp"
#include "fracgreen/grid.hpp"
#include "fracgreen/problem.hpp"

namespace fracgreen {

/// Continuum-scaled forward transform of an initial datum:
///   F[f](k) = (1/sqrt(2*pi)) integral e^{+ikx} f(x) dx,
/// approximated on the grid with the dx/sqrt(2*pi) scaling and the phase
/// correction for x_min != 0. A delta datum transforms to the constant
/// 1/sqrt(2*pi) exactly; zero data to zeros. Sampled data must satisfy the
/// edge-decay requirement max|edge| < 1e-8 * max|values| (EdgeDecayViolation
/// otherwise).
SpectralField forward_transform(const InitialData& data, const Grid1D& grid);

/// Single-order solution with the general asymmetric operator, valid for
/// 1 < alpha <= 2 and lambda = 0:
///   N*(k,t) = K1(b(k)) f*(k) + K2(b(k)) g*(k) + source term,
/// followed by the inverse synthesis
///   N(x,t) = (1/sqrt(2*pi)) sum_k e^{-ikx} N*(k,t) dk.
/// Returns the real part and records the discarded imaginary residual;
/// throws RealnessViolation if that residual exceeds 1e-6 * max|N|.
SolutionField solve_theorem1(const ProblemSpec& spec, double t,
                             const Grid1D& grid, double tol = 1e-10);

/// Same solution path restricted to symmetric operators (all theta_j = 0),
/// evaluated through the real symbol sigma(k). Agrees with solve_theorem1
/// on the same problem to the last bit.
SolutionField solve_corollary1(const ProblemSpec& spec, double t,
                               const Grid1D& grid, double tol = 1e-10);

/// Green-function path for 0 < alpha <= 1 with a delta datum (f = delta,
/// g = 0):
///   N(x,t) = (t^{alpha-1}/(2*pi)) sum_k e^{-ikx} E_{alpha,alpha}(-b(k) t^alpha) dk
/// plus the same source convolution as the other paths.
SolutionField solve_corollary2(const ProblemSpec& spec, double t,
                               const Grid1D& grid, double tol = 1e-10);

/// Two-order solution, 1 < alpha <= 2 and (when lambda != 0) 1 < beta <= 2,
/// with beta < alpha enforced by the kernel series:
///   N*(k,t) = (f* + lambda f2*) K2T_1(b(k)) + (g* + lambda g2*) K2T_2(b(k))
///             + source term,
/// where K2T_rho is the two-relaxation kernel. With lambda = 0 this matches
/// solve_theorem1 exactly. SeriesDivergence from the kernel series is
/// rethrown with the offending wavenumber named.
SolutionField solve_theorem2(const ProblemSpec& spec, double t,
                             const Grid1D& grid, double tol = 1e-10,
                             int r_max = 64);

/// Time convolution of the transformed source with the propagation kernel at
/// one wavenumber:
///   integral_0^t phi*(k, t-xi) xi^{alpha-1} E_{alpha,alpha}(-b(k) xi^alpha) dxi
/// for the single-order paths, or with the two-relaxation kernel when
/// spec.lambda != 0. The substitution xi = t s^{1/alpha} removes the endpoint
/// weight exactly; the remaining integral uses composite Gauss-Legendre with
/// doubled panel counts until the change falls below tol (QuadratureFailure
/// if the refinement stalls).
std::complex<double> source_convolution(const ProblemSpec& spec,
                                        const Grid1D& grid, double k, double t,
                                        double tol = 1e-10);

}
