#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace fracgreen {

/// Nodes and weights of a Gauss rule.
struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// Gauss-Legendre rule on [-1, 1], n >= 1. Nodes by Newton iteration on the
/// Legendre recurrence; accurate to a few ulp for n <= 512.
const QuadRule& gauss_legendre(int n);

/// Gauss-Laguerre rule for integrals of f(x) e^{-x} over [0, inf), n >= 1.
/// Nodes are eigenvalues of the Jacobi matrix (implicit-shift QL) polished by
/// Newton steps; weights whose magnitude underflows are dropped, so the
/// returned rule may hold fewer than n points.
QuadRule gauss_laguerre(int n);

/// Result of an adaptive integration: value, error estimate, and the number
/// of integrand evaluations spent.
struct AdaptiveResult {
    std::complex<double> value{0.0, 0.0};
    double est = 0.0;
    int evals = 0;
};

/// Adaptive Gauss-Legendre integration of f over [a, b] to absolute target
/// tol: each interval compares one 20-point rule against its two-half
/// refinement and splits until the local discrepancies sum below tol or the
/// depth cap is reached. Never throws; callers decide whether est is
/// acceptable.
AdaptiveResult adaptive_gauss_legendre(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double tol, int max_depth = 15);

}
