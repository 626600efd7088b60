#pragma once

#include <complex>
#include <functional>
#include <string>

#include "fracgreen/fields.hpp"
#include "fracgreen/grid.hpp"
#include "fracgreen/mlf.hpp"
#include "fracgreen/problem.hpp"

// Independent verification layer. Nothing here shares numerical machinery
// with the production code paths: the big-float series uses MPFR arithmetic
// and its own stopping rule, the finite-difference solver marches the PDE
// directly, and the transform checks integrate numerically.
namespace fracgreen::reference {

/// Big-float series evaluation result. re_digits/im_digits carry the value
/// rounded to the requested number of significant digits; value is the
/// nearest double pair.
struct BigValue {
    std::string re_digits;
    std::string im_digits;
    std::complex<double> value{0.0, 0.0};
    int terms = 0;
};

/// Ground-truth series summation of E^delta_{alpha,beta}(z) in arbitrary
/// precision (at least `digits` significant digits, with working precision
/// raised automatically to absorb the cancellation on the negative axis).
/// Requires digits >= 50, |z| <= 1e4, alpha > 0; throws NonConvergence at the
/// internal term cap.
BigValue mlf_bigfloat(const MLArgs& args, int digits);

struct SumuduOptions {
    double tol = 1e-9;
    // When the integrand behaves like t^eta near t = 0 with fractional eta,
    // set use_endpoint_hint and the exponent; the head of the integral is
    // then regularized by substitution instead of relying on Gauss-Laguerre
    // nodes alone.
    bool use_endpoint_hint = false;
    double endpoint_exponent = 0.0;
    int max_nodes = 4096;
};

/// Numerical scale-preserving transform G(u) = integral_0^inf f(u t) e^{-t} dt,
/// by Gauss-Laguerre quadrature (128 nodes, doubled adaptively), optionally
/// with the endpoint regularization above. Throws QuadratureFailure if
/// doubling stalls before reaching the tolerance.
std::complex<double> sumudu_numeric(
    const std::function<std::complex<double>(double)>& f, double u);
std::complex<double> sumudu_numeric(
    const std::function<std::complex<double>(double)>& f, double u,
    const SumuduOptions& opt);

/// Classical diffusion kernel exp(-x^2/(4 D t)) / sqrt(4 pi D t), t, D > 0.
double heat_kernel(double x, double t, double D);

/// Classical wave solution (g(x - t) + g(x + t)) / 2.
double dalembert(const std::function<double(double)>& g, double x, double t);

/// Explicit finite-difference marching configuration. The scheme integrates
/// the equivalent Volterra form of the equation with first-order
/// product-integration weights in time (the rectangle member of the
/// Grunwald-Letnikov family, prehistory zero) and fractional centered
/// differences of order gamma_j in space, so the fractional-derivative
/// initial traces enter exactly. Only symmetric operators (theta = 0) are
/// supported.
struct FDConfig {
    Grid1D grid;
    int nt = 100;          // number of time steps
    double dt = 1e-2;      // step size; final time is nt * dt
    double alpha = 1.0;    // leading time order, in (0, 2]
    double beta = 0.0;     // second time order (lambda != 0 requires beta < alpha)
    double lambda = 0.0;
    SpaceOperator op;

    // The explicit scheme is stable while
    //   dt^alpha * sigma_max + |lambda| * dt^{alpha-beta} <= stability_limit,
    // where sigma_max = sum_j mu_j dx^{-gamma_j} * 2 g0(gamma_j) is the sharp
    // bound of the discrete symbol. Exceeding it throws StabilityViolation.
    double stability_limit = 1.0;
};

/// Initial traces for the marching scheme. The two-order combination enters
/// as f + lambda*f2 and g + lambda*g2, mirroring the continuum identity.
/// A delta datum is realized as 1/dx at the center node. g data require
/// alpha = 2 (otherwise the t = 0 profile is singular and the oracle refuses).
struct FDInitial {
    InitialData f;
    InitialData g;
    InitialData f2;
    InitialData g2;
};

/// March to t = nt * dt and return the solution on the grid. Sampled source
/// spatial profiles must be sampled on config.grid. Throws StabilityViolation
/// on guard violation or non-finite values, ThetaNotZero for asymmetric
/// operators. First-order accurate in dt; second-order in dx for gamma = 2.
SolutionField gl_fd_solver(const FDConfig& config, const FDInitial& init,
                           const SourceTerm& source);

}
