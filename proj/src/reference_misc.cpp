#include <fracgreen/reference.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fracgreen/errors.hpp>
#include <fracgreen/quadrature.hpp>

namespace fracgreen::reference {

namespace {

using cplx = std::complex<double>;

// Tail contribution int_1^inf f(u t) e^{-t} dt via shifted Gauss-Laguerre
// with the node count handed in.
cplx tail_laguerre(const std::function<cplx(double)>& f, double u, int nodes) {
    const QuadRule rule = gauss_laguerre(nodes);
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        acc += rule.w[i] * f(u * (1.0 + rule.x[i]));
    }
    return std::exp(-1.0) * acc;
}

// Whole-line integral by plain Gauss-Laguerre at the node count handed in.
cplx whole_laguerre(const std::function<cplx(double)>& f, double u,
                    int nodes) {
    const QuadRule rule = gauss_laguerre(nodes);
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        acc += rule.w[i] * f(u * rule.x[i]);
    }
    return acc;
}

} // namespace

cplx sumudu_numeric(const std::function<cplx(double)>& f, double u) {
    return sumudu_numeric(f, u, SumuduOptions{});
}

cplx sumudu_numeric(const std::function<cplx(double)>& f, double u,
                    const SumuduOptions& opt) {
    if (!(u > 0.0) || !std::isfinite(u))
        throw DomainError("sumudu_numeric: u must be positive and finite");
    if (!(opt.tol > 0.0))
        throw DomainError("sumudu_numeric: tol must be positive");
    if (opt.max_nodes < 128)
        throw DomainError("sumudu_numeric: max_nodes must be at least 128");
    if (opt.use_endpoint_hint && !(opt.endpoint_exponent > -1.0))
        throw DomainError(
            "sumudu_numeric: endpoint exponent must exceed -1 for an "
            "integrable head");

    if (!opt.use_endpoint_hint) {
        // Plain doubling ladder on the Laguerre node count.
        cplx prev{0.0, 0.0};
        bool have_prev = false;
        for (int n = 128; n <= opt.max_nodes; n *= 2) {
            const cplx cur = whole_laguerre(f, u, n);
            if (have_prev) {
                const double diff = std::abs(cur - prev);
                if (diff <= opt.tol * std::max(1.0, std::abs(cur))) return cur;
            }
            prev = cur;
            have_prev = true;
        }
        throw QuadratureFailure(
            "sumudu_numeric: node doubling stalled before reaching the "
            "tolerance; a fractional endpoint may need the endpoint hint");
    }

    // Head on [0, 1] with the algebraic endpoint regularized by t = v^q so
    // the substituted integrand behaves like v^(q(eta+1)-1) with a safely
    // large exponent; tail on [1, inf) by shifted Gauss-Laguerre doubling.
    const double eta = opt.endpoint_exponent;
    const double q = std::max(1.0, std::ceil(3.0 / (eta + 1.0)));
    const auto head_integrand = [&](double v) -> cplx {
        if (v <= 0.0) return {0.0, 0.0};
        const double t = std::pow(v, q);
        return f(u * t) * std::exp(-t) * q * std::pow(v, q - 1.0);
    };
    const AdaptiveResult head =
        adaptive_gauss_legendre(head_integrand, 0.0, 1.0, opt.tol * 0.25);
    if (head.est > opt.tol * 0.5) {
        std::ostringstream os;
        os << "sumudu_numeric: head quadrature stalled at estimated error "
           << head.est << " for tolerance " << opt.tol;
        throw QuadratureFailure(os.str());
    }

    cplx prev{0.0, 0.0};
    bool have_prev = false;
    for (int n = 128; n <= opt.max_nodes; n *= 2) {
        const cplx tail = tail_laguerre(f, u, n);
        const cplx cur = head.value + tail;
        if (have_prev) {
            const double diff = std::abs(cur - prev);
            if (diff <= opt.tol * std::max(1.0, std::abs(cur))) return cur;
        }
        prev = cur;
        have_prev = true;
    }
    throw QuadratureFailure(
        "sumudu_numeric: tail node doubling stalled before reaching the "
        "tolerance");
}

double heat_kernel(double x, double t, double D) {
    if (!(t > 0.0) || !(D > 0.0))
        throw DomainError("heat_kernel: requires t > 0 and D > 0");
    const double s = 4.0 * D * t;
    return std::exp(-x * x / s) / std::sqrt(M_PI * s);
}

double dalembert(const std::function<double(double)>& g, double x, double t) {
    return 0.5 * (g(x - t) + g(x + t));
}

} // namespace fracgreen::reference
