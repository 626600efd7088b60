#include <fracgreen/reference.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include <mpfr.h>

#include <fracgreen/errors.hpp>

// The only translation unit that touches MPFR. The production evaluator never
// calls into this file; it exists so tests can compare the two.
namespace fracgreen::reference {

namespace {

// Minimal RAII handle around one mpfr_t.
struct Big {
    mpfr_t v;
    explicit Big(mpfr_prec_t bits) { mpfr_init2(v, bits); mpfr_set_zero(v, 1); }
    ~Big() { mpfr_clear(v); }
    Big(const Big&) = delete;
    Big& operator=(const Big&) = delete;
};

constexpr long kTermCap = 500000;

std::string format_digits(const mpfr_t x, int digits) {
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, x);
    return std::string(buf.data());
}

// log10 of a big value from its binary exponent; x must be nonzero.
double log10_mag(const mpfr_t x) {
    return static_cast<double>(mpfr_get_exp(x)) * 0.30102999566398120;
}

struct SumOutcome {
    bool converged = false;
    long terms = 0;
    double peak_log10 = 0.0;   // log10 of the largest term magnitude
    double sum_log10 = 0.0;    // log10 of max(|Re sum|, |Im sum|)
    bool sum_is_zero = true;
};

// One summation pass of sum_n (delta)_n z^n / (Gamma(alpha n + beta) n!) at a
// fixed working precision. Outputs land in sum_re / sum_im, which must be
// initialized at the same precision.
SumOutcome sum_once(const MLArgs& a, int digits, long wp_digits,
                    mpfr_prec_t bits, mpfr_t sum_re, mpfr_t sum_im) {
    const mpfr_rnd_t R = MPFR_RNDN;
    Big zr(bits), zi(bits), znr(bits), zni(bits), poch(bits), nfac(bits);
    Big an(bits), g(bits), c(bits), tr(bits), ti(bits);
    Big t1(bits), t2(bits), peak(bits), small_rel(bits), small_abs(bits);
    Big summag(bits), thresh(bits);

    mpfr_set_d(zr.v, a.z.real(), R);
    mpfr_set_d(zi.v, a.z.imag(), R);
    mpfr_set_ui(znr.v, 1, R);
    mpfr_set_zero(zni.v, 1);
    mpfr_set_ui(poch.v, 1, R);
    mpfr_set_ui(nfac.v, 1, R);
    mpfr_set_zero(sum_re, 1);
    mpfr_set_zero(sum_im, 1);
    mpfr_set_zero(peak.v, 1);
    // Relative stop: 10^-(digits+5); absolute floor: peak * 10^-wp_digits.
    mpfr_set_ui(t1.v, 10, R);
    mpfr_pow_ui(small_rel.v, t1.v, static_cast<unsigned long>(digits) + 5, R);
    mpfr_pow_ui(small_abs.v, t1.v, static_cast<unsigned long>(wp_digits), R);

    // The terms peak near n* = |z|^{1/alpha} / alpha; never stop before it.
    const double xd = std::pow(std::abs(a.z), 1.0 / a.alpha);
    const long n_min =
        std::min<long>(kTermCap, static_cast<long>(xd / a.alpha) + 8);

    SumOutcome out;
    int small_run = 0;
    const bool z_zero = (a.z.real() == 0.0 && a.z.imag() == 0.0);

    for (long n = 0; n <= kTermCap; ++n) {
        // an = alpha * n + beta, in the working precision
        mpfr_set_d(t1.v, a.alpha, R);
        mpfr_mul_si(t1.v, t1.v, n, R);
        mpfr_add_d(an.v, t1.v, a.beta, R);

        // 1/Gamma has a zero at non-positive integers; skip those terms.
        const bool pole = mpfr_integer_p(an.v) && mpfr_sgn(an.v) <= 0;
        if (!pole) {
            mpfr_gamma(g.v, an.v, R);
            mpfr_mul(t1.v, g.v, nfac.v, R);
            mpfr_div(c.v, poch.v, t1.v, R);
            mpfr_mul(tr.v, znr.v, c.v, R);
            mpfr_mul(ti.v, zni.v, c.v, R);
            mpfr_add(sum_re, sum_re, tr.v, R);
            mpfr_add(sum_im, sum_im, ti.v, R);

            mpfr_abs(tr.v, tr.v, R);
            mpfr_abs(ti.v, ti.v, R);
            mpfr_max(t1.v, tr.v, ti.v, R);        // term magnitude
            mpfr_max(peak.v, peak.v, t1.v, R);

            mpfr_abs(t2.v, sum_re, R);
            mpfr_abs(thresh.v, sum_im, R);
            mpfr_max(summag.v, t2.v, thresh.v, R);
            mpfr_div(t2.v, summag.v, small_rel.v, R);    // |sum| 10^-(d+5)
            mpfr_div(thresh.v, peak.v, small_abs.v, R);  // peak 10^-wp
            mpfr_max(thresh.v, thresh.v, t2.v, R);
            if (mpfr_cmp(t1.v, thresh.v) <= 0) {
                ++small_run;
            } else {
                small_run = 0;
            }
        }
        out.terms = n + 1;
        if ((small_run >= 3 && n >= n_min) || (z_zero && n >= 1)) {
            out.converged = true;
            break;
        }

        // advance recurrences to n+1
        mpfr_mul_si(nfac.v, nfac.v, n + 1, R);
        mpfr_set_d(t1.v, a.delta, R);
        mpfr_add_si(t1.v, t1.v, n, R);
        mpfr_mul(poch.v, poch.v, t1.v, R);
        // (znr, zni) *= (zr, zi)
        mpfr_mul(t1.v, znr.v, zr.v, R);
        mpfr_mul(t2.v, zni.v, zi.v, R);
        mpfr_sub(t1.v, t1.v, t2.v, R);
        mpfr_mul(t2.v, znr.v, zi.v, R);
        mpfr_mul(znr.v, zni.v, zr.v, R);   // znr temporarily holds zni*zr
        mpfr_add(zni.v, t2.v, znr.v, R);
        mpfr_set(znr.v, t1.v, R);
    }

    mpfr_abs(t1.v, sum_re, R);
    mpfr_abs(t2.v, sum_im, R);
    mpfr_max(summag.v, t1.v, t2.v, R);
    out.sum_is_zero = (mpfr_zero_p(summag.v) != 0);
    if (!out.sum_is_zero) out.sum_log10 = log10_mag(summag.v);
    if (!mpfr_zero_p(peak.v)) out.peak_log10 = log10_mag(peak.v);
    return out;
}

} // namespace

BigValue mlf_bigfloat(const MLArgs& args, int digits) {
    if (digits < 50) {
        std::ostringstream os;
        os << "mlf_bigfloat: digits must be at least 50, got " << digits;
        throw DomainError(os.str());
    }
    if (!(args.alpha > 0.0) || !std::isfinite(args.alpha) ||
        !std::isfinite(args.beta) || !(args.delta > 0.0) ||
        !std::isfinite(args.delta) || !std::isfinite(args.z.real()) ||
        !std::isfinite(args.z.imag())) {
        throw DomainError("mlf_bigfloat: requires finite parameters with "
                          "alpha > 0 and delta > 0");
    }
    const double az = std::abs(args.z);
    if (az > 1e4 * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "mlf_bigfloat: |z| must not exceed 1e4, got " << az;
        throw DomainError(os.str());
    }

    // Initial working precision: requested digits plus the expected
    // peak-to-value cancellation |z|^{1/alpha} / ln 10 plus headroom.
    const double xd = std::pow(az, 1.0 / args.alpha);
    if (xd / args.alpha > static_cast<double>(kTermCap)) {
        std::ostringstream os;
        os << "mlf_bigfloat: the series peaks near term "
           << xd / args.alpha << ", beyond the cap of " << kTermCap;
        throw NonConvergence(os.str());
    }
    long wp_digits =
        digits + 30 +
        static_cast<long>(
            (xd + args.delta * std::log(xd / args.alpha + args.delta + 10.0)) /
            std::log(10.0));

    for (int round = 0; round < 4; ++round) {
        const mpfr_prec_t bits = static_cast<mpfr_prec_t>(
            std::ceil(static_cast<double>(wp_digits) * 3.3219280948873623) +
            32.0);
        Big sr(bits), si(bits);
        const SumOutcome oc =
            sum_once(args, digits, wp_digits, bits, sr.v, si.v);
        if (!oc.converged) {
            std::ostringstream os;
            os << "mlf_bigfloat: series did not settle within " << kTermCap
               << " terms for alpha = " << args.alpha << ", |z| = " << az;
            throw NonConvergence(os.str());
        }
        // Cancellation eats peak/|sum| digits of the working precision; only
        // accept when what survives covers the request.
        const double lost =
            oc.sum_is_zero ? static_cast<double>(wp_digits)
                           : (oc.peak_log10 - oc.sum_log10);
        const double achieved = static_cast<double>(wp_digits) - lost;
        if (!oc.sum_is_zero && achieved >= static_cast<double>(digits) + 3.0) {
            BigValue out;
            out.re_digits = format_digits(sr.v, digits);
            out.im_digits = format_digits(si.v, digits);
            out.value = {mpfr_get_d(sr.v, MPFR_RNDN),
                         mpfr_get_d(si.v, MPFR_RNDN)};
            out.terms = static_cast<int>(oc.terms);
            return out;
        }
        if (oc.sum_is_zero && args.z.real() == 0.0 && args.z.imag() == 0.0) {
            // Exact zero: beta sits on a pole of Gamma, so E(0) = 0.
            BigValue out;
            out.re_digits = "0";
            out.im_digits = "0";
            out.value = {0.0, 0.0};
            out.terms = static_cast<int>(oc.terms);
            return out;
        }
        wp_digits = std::max<long>(
            wp_digits + 30,
            digits + static_cast<long>(std::ceil(lost)) + 30);
    }
    throw NonConvergence(
        "mlf_bigfloat: could not reach the requested digits after four "
        "precision escalations");
}

} // namespace fracgreen::reference
