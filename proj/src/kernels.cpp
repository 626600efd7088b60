#include <fracgreen/kernels.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <fracgreen/errors.hpp>
#include <fracgreen/mlf.hpp>

namespace fracgreen {

namespace {

using cplx = std::complex<double>;

// The Mittag-Leffler evaluator works to an absolute target; rescale the
// caller's absolute tolerance by the prefactor that multiplies E, and keep
// the result inside the evaluator's supported tolerance window.
double inner_tol(double tol, double scale) {
    const double s = std::max(scale, 1e-300);
    return std::clamp(tol / s, 1e-12, 1e-3);
}

void check_kernel_args(const char* name, double t, double tol) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        std::ostringstream os;
        os << name << ": t must be positive and finite, got " << t;
        throw DomainError(os.str());
    }
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        std::ostringstream os;
        os << name << ": tol must be positive, got " << tol;
        throw DomainError(os.str());
    }
}

} // namespace

cplx kernel_single(double alpha, double rho, cplx b, double t, double tol) {
    check_kernel_args("kernel_single", t, tol);
    const double pre = std::pow(t, alpha - rho);
    if (!std::isfinite(pre)) {
        std::ostringstream os;
        os << "kernel_single: prefactor t^(alpha-rho) overflows for t = " << t
           << ", alpha - rho = " << (alpha - rho);
        throw DomainError(os.str());
    }
    MLArgs args;
    args.alpha = alpha;
    args.beta = alpha - rho + 1.0;
    args.delta = 1.0;
    args.z = -b * std::pow(t, alpha);
    const MLResult r = mlf_eval(args, inner_tol(tol, std::abs(pre)));
    return pre * r.value;
}

cplx kernel_two_term(double alpha, double beta, double lambda, double rho,
                     cplx b, double t, double tol, int r_max) {
    if (lambda == 0.0) return kernel_single(alpha, rho, b, t, tol);
    check_kernel_args("kernel_two_term", t, tol);
    if (r_max < 1) {
        std::ostringstream os;
        os << "kernel_two_term: r_max must be at least 1, got " << r_max;
        throw DomainError(os.str());
    }
    if (!(beta < alpha)) {
        std::ostringstream os;
        os << "kernel_two_term: requires beta < alpha, got alpha = " << alpha
           << ", beta = " << beta;
        throw DomainError(os.str());
    }

    const cplx z = -b * std::pow(t, alpha);
    // Consecutive prefactors differ by this factor; its magnitude is the
    // growth ratio quoted on divergence.
    const double ratio = std::abs(lambda) * std::pow(t, alpha - beta);

    cplx sum{0.0, 0.0};
    cplx comp{0.0, 0.0};
    double coef = std::pow(t, alpha - rho);
    double prev_mag = std::numeric_limits<double>::infinity();
    int small_run = 0;
    int grow_run = 0;

    for (int r = 0; r < r_max; ++r) {
        const double scale = std::abs(coef);
        cplx term{0.0, 0.0};
        double term_mag = 0.0;
        if (scale > 0.0 && std::isfinite(scale)) {
            MLArgs args;
            args.alpha = alpha;
            args.beta = alpha + (alpha - beta) * static_cast<double>(r) -
                        rho + 1.0;
            args.delta = static_cast<double>(r + 1);
            args.z = z;
            const MLResult ml = mlf_eval(args, inner_tol(tol, scale));
            term = coef * ml.value;
            term_mag = std::abs(term);
        }
        if (!std::isfinite(term_mag)) {
            std::ostringstream os;
            os << "kernel_two_term: summand " << r
               << " overflows; growth ratio |lambda| t^(alpha-beta) = "
               << ratio;
            throw SeriesDivergence(os.str());
        }

        const cplx y = term - comp;
        const cplx s1 = sum + y;
        comp = (s1 - sum) - y;
        sum = s1;

        if (term_mag <= tol * std::abs(sum) + 1e-300) {
            if (++small_run >= 3) return sum;
        } else {
            small_run = 0;
        }
        if (term_mag > prev_mag) {
            if (++grow_run >= 5) {
                std::ostringstream os;
                os << "kernel_two_term: summands grew for " << grow_run
                   << " consecutive terms at r = " << r
                   << "; growth ratio |lambda| t^(alpha-beta) = " << ratio;
                throw SeriesDivergence(os.str());
            }
        } else {
            grow_run = 0;
        }
        prev_mag = term_mag;

        coef *= -lambda * std::pow(t, alpha - beta);
    }
    std::ostringstream os;
    os << "kernel_two_term: no convergence within r_max = " << r_max
       << " terms; growth ratio |lambda| t^(alpha-beta) = " << ratio;
    throw SeriesDivergence(os.str());
}

} // namespace fracgreen
