#include "fracgreen/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "fracgreen/errors.hpp"

namespace fracgreen {

namespace {

// Legendre P_n and its derivative at x by upward recurrence.
void legendre_pair(int n, double x, double& pn, double& dpn) {
    double p0 = 1.0, p1 = x;
    if (n == 0) {
        pn = p0;
        dpn = 0.0;
        return;
    }
    for (int k = 1; k < n; ++k) {
        double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    pn = p1;
    dpn = n * (x * p1 - p0) / (x * x - 1.0);
}

QuadRule build_gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
    QuadRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi-style initial guess, then Newton.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pn = 0.0, dpn = 0.0;
        for (int it = 0; it < 100; ++it) {
            legendre_pair(n, x, pn, dpn);
            double dx = -pn / dpn;
            x += dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        legendre_pair(n, x, pn, dpn);
        double w = 2.0 / ((1.0 - x * x) * dpn * dpn);
        rule.x[i] = -x;  // ascending order
        rule.w[i] = w;
        rule.x[n - 1 - i] = x;
        rule.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.x[n / 2] = 0.0;
    return rule;
}

// Eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
// method; d holds the diagonal, e the subdiagonal (e[i] couples i and i+1).
void tridiag_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    const double eps = 2.3e-16;
    e.resize(n, 0.0);  // e[n-1] used as scratch
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        for (;;) {
            for (m = l; m < n - 1; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (iter++ == 80)
                throw NonConvergence("tridiagonal eigenvalue iteration stalled");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    std::sort(d.begin(), d.end());
}

// Laguerre L_n(x) with running renormalization; returns log|L_n| and the
// sign, so huge magnitudes at large x never overflow.
void laguerre_scaled(int n, double x, double& log_abs, double& sign) {
    double a = 1.0;        // L_{k-1}
    double b = 1.0 - x;    // L_k
    double log_scale = 0.0;
    if (n == 0) {
        log_abs = 0.0;
        sign = 1.0;
        return;
    }
    for (int k = 1; k < n; ++k) {
        double c = ((2.0 * k + 1.0 - x) * b - k * a) / (k + 1.0);
        a = b;
        b = c;
        double m = std::max(std::fabs(a), std::fabs(b));
        if (m > 1e120) {
            a /= m;
            b /= m;
            log_scale += std::log(m);
        }
    }
    log_abs = (b == 0.0) ? -1e308 : std::log(std::fabs(b)) + log_scale;
    sign = (b >= 0.0) ? 1.0 : -1.0;
}

// One Newton step for a root of L_n, using L'_n = n (L_n - L_{n-1}) / x.
double laguerre_newton_step(int n, double x) {
    double a = 1.0, b = 1.0 - x;
    double log_scale = 0.0;
    for (int k = 1; k < n; ++k) {
        double c = ((2.0 * k + 1.0 - x) * b - k * a) / (k + 1.0);
        a = b;
        b = c;
        double m = std::max(std::fabs(a), std::fabs(b));
        if (m > 1e120) {
            a /= m;
            b /= m;
            log_scale += std::log(m);
        }
    }
    (void)log_scale;  // ratio below is scale-free
    double deriv = n * (b - a) / x;
    if (deriv == 0.0) return 0.0;
    return -b / deriv;
}

}  // namespace

const QuadRule& gauss_legendre(int n) {
    static std::mutex mtx;
    static std::map<int, QuadRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
    return it->second;
}

QuadRule gauss_laguerre(int n) {
    if (n < 1) throw DomainError("gauss_laguerre: n must be >= 1");
    // Jacobi matrix of the Laguerre recurrence: diagonal 2i+1, subdiagonal i.
    std::vector<double> d(n), e(n, 0.0);
    for (int i = 0; i < n; ++i) d[i] = 2.0 * i + 1.0;
    for (int i = 0; i + 1 < n; ++i) e[i] = static_cast<double>(i + 1);
    tridiag_eigenvalues(d, e);

    QuadRule rule;
    for (int i = 0; i < n; ++i) {
        double x = d[i];
        for (int it = 0; it < 4; ++it) {
            double dx = laguerre_newton_step(n, x);
            x += dx;
            if (std::fabs(dx) < 1e-14 * std::max(1.0, x)) break;
        }
        // w = x / ((n+1)^2 L_{n+1}(x)^2), evaluated in logs to dodge both
        // overflow of L and underflow of w at the largest nodes.
        double log_abs = 0.0, sign = 1.0;
        laguerre_scaled(n + 1, x, log_abs, sign);
        double log_w = std::log(x) - 2.0 * std::log(n + 1.0) - 2.0 * log_abs;
        if (log_w < -690.0) continue;  // weight underflows; node contributes nothing
        rule.x.push_back(x);
        rule.w.push_back(std::exp(log_w));
    }
    if (rule.x.empty())
        throw NonConvergence("gauss_laguerre: all weights underflowed");
    return rule;
}

namespace {

std::complex<double> gl_fixed(const std::function<std::complex<double>(double)>& f,
                              double a, double b, const QuadRule& rule) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < rule.x.size(); ++i)
        acc += rule.w[i] * f(mid + hw * rule.x[i]);
    return acc * hw;
}

}  // namespace

AdaptiveResult adaptive_gauss_legendre(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double tol, int max_depth) {
    AdaptiveResult out;
    if (a == b) return out;
    const QuadRule& rule = gauss_legendre(20);
    const double total = std::fabs(b - a);

    struct Seg {
        double a, b;
        std::complex<double> whole;
        int depth;
    };
    std::vector<Seg> stack;
    stack.push_back({a, b, gl_fixed(f, a, b, rule), 0});
    out.evals += 20;

    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (s.a + s.b);
        std::complex<double> left = gl_fixed(f, s.a, mid, rule);
        std::complex<double> right = gl_fixed(f, mid, s.b, rule);
        out.evals += 40;
        const double disc = std::abs(s.whole - (left + right));
        const double budget = tol * std::fabs(s.b - s.a) / total;
        if (disc <= budget || s.depth >= max_depth) {
            out.value += left + right;
            out.est += disc;
        } else {
            stack.push_back({s.a, mid, left, s.depth + 1});
            stack.push_back({mid, s.b, right, s.depth + 1});
        }
    }
    return out;
}

}
