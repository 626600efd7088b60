#include "fracgreen/gamma.hpp"

#include <cmath>
#include <limits>

namespace fracgreen {

namespace {

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// std::lgamma writes the global signgam on glibc, which is a data race when
// worker threads evaluate gamma concurrently. Use the reentrant form there.
double lgamma_safe(double x) {
#if defined(__GLIBC__)
    int s = 0;
    return ::lgamma_r(x, &s);
#else
    return std::lgamma(x);
#endif
}

// log|sin(pi x)| evaluated without losing digits near the zeros of sin.
// Reduce to the nearest integer first; sin(pi r) for |r| <= 1/2 is safe.
double log_abs_sinpi(double x, int& sign) {
    double n = std::nearbyint(x);
    double r = x - n;
    double s = std::sin(M_PI * r);
    // parity of n flips the sign of sin(pi x)
    bool odd = std::fmod(std::fabs(n), 2.0) == 1.0;
    sign = (s > 0.0) ? 1 : (s < 0.0 ? -1 : 0);
    if (odd) sign = -sign;
    if (s == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::fabs(s));
}

} // namespace

double log_reciprocal_gamma(double x, int& sign) {
    if (std::isnan(x)) {
        sign = 0;
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (is_nonpositive_integer(x)) {
        sign = 0;
        return -std::numeric_limits<double>::infinity();
    }
    if (x > 0.0) {
        sign = 1;
        return -lgamma_safe(x);
    }
    // reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
    int ssign = 0;
    double ls = log_abs_sinpi(x, ssign);
    sign = ssign;
    return lgamma_safe(1.0 - x) + ls - std::log(M_PI);
}

double reciprocal_gamma(double x) {
    if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
    if (is_nonpositive_integer(x)) return 0.0;
    // tgamma is accurate to a few ulp; prefer it wherever Gamma itself is
    // representable and exp(-lgamma) would amplify the log's rounding.
    if (x > 0.0) {
        if (x < 171.0) return 1.0 / std::tgamma(x);
        int sign = 0;
        double lg = log_reciprocal_gamma(x, sign);
        return std::exp(lg); // underflows to 0 for large x, which is correct
    }
    if (x > -170.0) {
        // reflection with sin(pi x) reduced about the nearest integer
        double n = std::nearbyint(x);
        double r = x - n;
        double s = std::sin(M_PI * r);
        if (std::fmod(std::fabs(n), 2.0) == 1.0) s = -s;
        return std::tgamma(1.0 - x) * s / M_PI;
    }
    int sign = 0;
    double lg = log_reciprocal_gamma(x, sign);
    double v = std::exp(lg); // may overflow to inf; callers use the log form
    return sign >= 0 ? v : -v;
}

} // namespace fracgreen
