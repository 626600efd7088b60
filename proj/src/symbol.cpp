#include "fracgreen/symbol.hpp"

#include <cmath>
#include <sstream>

#include "fracgreen/errors.hpp"

namespace fracgreen {

void validate_operator(const SpaceOperator& op) {
    if (op.terms.empty())
        throw DomainError("space operator needs at least one term");
    for (const auto& t : op.terms) {
        if (!(t.mu > 0.0) || !std::isfinite(t.mu))
            throw DomainError("constraint violated: mu > 0");
        if (!(t.gamma > 0.0 && t.gamma <= 2.0))
            throw DomainError("constraint violated: 0 < gamma <= 2");
        const double bound = std::min(t.gamma, 2.0 - t.gamma);
        if (!(std::fabs(t.theta) <= bound) || !std::isfinite(t.theta)) {
            std::ostringstream msg;
            msg << "constraint violated: |theta| <= min(gamma, 2-gamma)"
                << " (theta=" << t.theta << ", gamma=" << t.gamma
                << ", bound=" << bound << ")";
            throw DomainError(msg.str());
        }
    }
}

std::complex<double> riesz_feller_symbol(const RieszFellerTerm& term, double k) {
    if (k == 0.0) return {0.0, 0.0};  // sign(0) = 0, so the phase vanishes too
    const double mag = std::pow(std::fabs(k), term.gamma);
    const double sgn = (k > 0.0) ? 1.0 : -1.0;
    return std::polar(mag, sgn * term.theta * M_PI / 2.0);
}

std::complex<double> b_of_k(const SpaceOperator& op, double k) {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& t : op.terms) acc += t.mu * riesz_feller_symbol(t, k);
    return acc;
}

double sigma_of_k(const SpaceOperator& op, double k) {
    double acc = 0.0;
    for (const auto& t : op.terms) {
        if (t.theta != 0.0)
            throw ThetaNotZero("sigma_of_k requires every theta = 0");
        acc += (k == 0.0) ? 0.0 : t.mu * std::pow(std::fabs(k), t.gamma);
    }
    return acc;
}

}
