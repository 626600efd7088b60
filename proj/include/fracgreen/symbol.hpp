#pragma once

#include <complex>
#include <vector>

namespace fracgreen {

/// One term of the space operator: a fractional derivative of order gamma
/// with asymmetry theta, scaled by the diffusion coefficient mu.
struct RieszFellerTerm {
    double mu = 1.0;     // diffusion coefficient, > 0
    double gamma = 2.0;  // space order, in (0, 2]
    double theta = 0.0;  // asymmetry, |theta| <= min(gamma, 2 - gamma)
};

/// Multi-term space operator; the Fourier symbol of the full operator is
/// -b(k) with b(k) = sum_j mu_j * Psi_{gamma_j,theta_j}(k).
struct SpaceOperator {
    std::vector<RieszFellerTerm> terms;
};

// Throws DomainError if any term (or an empty term list) violates the
// parameter constraints above.
void validate_operator(const SpaceOperator& op);

/// Symbol of a single term: Psi(k) = |k|^gamma * exp(i*sign(k)*theta*pi/2),
/// with sign(0) = 0 so that Psi(0) = 0.
std::complex<double> riesz_feller_symbol(const RieszFellerTerm& term, double k);

/// b(k) = sum over terms of mu * Psi(k). The asymmetry bound guarantees
/// Re(b) >= 0 for every k.
std::complex<double> b_of_k(const SpaceOperator& op, double k);

/// Symmetric-operator symbol sigma(k) = sum_j mu_j |k|^{gamma_j}, valid only
/// when every theta_j = 0; throws ThetaNotZero otherwise.
double sigma_of_k(const SpaceOperator& op, double k);

}
