#pragma once

#include <complex>

namespace fracgreen {

/// Arguments of the three-parameter (Prabhakar) Mittag-Leffler function
/// E^delta_{alpha,beta}(z) = sum_n (delta)_n z^n / (Gamma(n*alpha+beta) n!).
///
/// beta may be any real: terms whose Gamma argument hits a non-positive
/// integer contribute zero through the reciprocal gamma, which extends the
/// function past the textbook Re(beta) > 0 restriction. That extension is
/// required because the two-order kernels use second parameters that dip
/// below zero for large series indices.
struct MLArgs {
    double alpha = 1.0;             // > 0 (evaluator certified for (0, 2])
    double beta = 1.0;              // any real
    double delta = 1.0;             // > 0; integer-valued in all solver uses
    std::complex<double> z{0.0, 0.0};
};

struct MLResult {
    std::complex<double> value{0.0, 0.0};
    double est_abs_error = 0.0;  // honest estimate of the absolute error
    int terms_used = 0;          // series terms or quadrature evaluations
};

/// Direct power-series summation with compensated accumulation.
///
/// Precondition: tol > 0 and |z| <= 50 (the series dispatch domain). The sum
/// stops once three consecutive terms fall below tol * |partial sum| (with a
/// minimum of 8 terms) and throws NonConvergence if the 10000-term cap is
/// reached first. est_abs_error accounts for accumulated roundoff, which on
/// the negative axis grows like the largest term times machine epsilon, so a
/// small tolerance can be legitimately unreachable here; mlf_eval handles
/// those cases through its other branches.
MLResult mlf_series(const MLArgs& args, double tol);

/// Adaptive evaluator for the solver envelope: alpha in (0, 2], tol >= 1e-12,
/// and either Re(z) <= 0 or |z| small enough for the series.
///
/// Dispatch: power series for small |z|; for large |z| the algebraic
/// large-argument expansion plus the exact contributions of the poles of the
/// underlying Laplace-space image; and, when the error estimate of those fast
/// paths cannot certify tol, a numerically integrated wedge contour of the
/// Laplace inversion as a backstop. The large-argument machinery requires
/// integer delta <= 64 and alpha*delta - beta > -0.95 (always true for the
/// kernels used by the solver).
///
/// The tolerance is absolute. For results so large that an absolute target
/// below 1e-12 * |value| would be finer than double spacing, a 1e-12 relative
/// criterion is applied instead.
///
/// Throws DomainError outside the envelope, NonConvergence when no branch can
/// certify the tolerance (est_abs_error of the best attempt in the message).
MLResult mlf_eval(const MLArgs& args, double tol = 1e-10);

}
