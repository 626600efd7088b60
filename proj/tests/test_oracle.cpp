#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>

#include <fracgreen/errors.hpp>
#include <fracgreen/quadrature.hpp>
#include <fracgreen/reference.hpp>

using namespace fracgreen;
using cplx = std::complex<double>;

namespace {

double rel(double got, double want) {
    return std::abs(got - want) / std::max(1.0e-300, std::abs(want));
}

reference::BigValue big(double alpha, double beta, double delta, cplx z,
                        int digits = 60) {
    MLArgs args;
    args.alpha = alpha;
    args.beta = beta;
    args.delta = delta;
    args.z = z;
    return reference::mlf_bigfloat(args, digits);
}

}

TEST_CASE("big-float series recovers e and its digit string") {
    const auto r = big(1.0, 1.0, 1.0, cplx(1.0, 0.0), 100);
    CHECK(rel(r.value.real(), 2.7182818284590452353602874713526624977572470937) < 1e-15);
    CHECK(std::abs(r.value.imag()) == 0.0);
    CHECK(r.terms > 10);
    // digit payload, checked format-agnostically past the decimal point
    CHECK(r.re_digits.find("71828182845904523536028747135266249775724709369995")
          != std::string::npos);
}

TEST_CASE("big-float series matches classical special cases") {
    // order two with beta = 1 reduces to cos at negative arguments
    CHECK(rel(big(2.0, 1.0, 1.0, cplx(-1.0, 0.0)).value.real(), std::cos(1.0)) < 1e-15);
    // order one half reduces to the scaled complementary error function
    CHECK(rel(big(0.5, 1.0, 1.0, cplx(-2.0, 0.0)).value.real(),
              std::exp(4.0) * std::erfc(2.0)) < 1e-13);
    // beta = 0 drops the n = 0 term through the gamma pole
    CHECK(rel(big(1.0, 0.0, 1.0, cplx(0.7, 0.0)).value.real(),
              0.7 * std::exp(0.7)) < 1e-14);
}

TEST_CASE("big-float series survives heavy cancellation on the negative axis") {
    // E_{1/2,1}(-x) = e^{x^2} erfc(x); at x = 40 the raw series terms peak
    // near e^{1600} while the value is ~1.4e-2, so this exercises the
    // automatic precision escalation. The target comes from the asymptotic
    // expansion of the scaled erfc, truncated where its terms stop falling.
    const double x = 40.0;
    const double x2 = x * x;
    double term = 1.0, want = 0.0;
    for (int n = 0; n < 8; ++n) {
        want += term;
        term *= -(2.0 * n + 1.0) / (2.0 * x2);
    }
    want /= x * std::sqrt(3.14159265358979323846264338327950288);
    const auto r = big(0.5, 1.0, 1.0, cplx(-40.0, 0.0), 60);
    CHECK(rel(r.value.real(), want) < 1e-12);
}

TEST_CASE("big-float series rejects out-of-contract requests") {
    CHECK_THROWS_AS(big(1.0, 1.0, 1.0, cplx(1.0, 0.0), 20), DomainError);
    CHECK_THROWS_AS(big(1.0, 1.0, 1.0, cplx(2e4, 0.0)), DomainError);
    CHECK_THROWS_AS(big(0.0, 1.0, 1.0, cplx(1.0, 0.0)), DomainError);
    CHECK_THROWS_AS(big(1.0, 1.0, -2.0, cplx(1.0, 0.0)), DomainError);
}

TEST_CASE("the numerical transform reproduces elementary images") {
    // f(t) = e^{-2t} maps to 1/(1 + 2u)
    const cplx g1 = reference::sumudu_numeric(
        [](double t) { return cplx(std::exp(-2.0 * t), 0.0); }, 0.7);
    CHECK(rel(g1.real(), 1.0 / 2.4) < 1e-9);

    // f(t) = sin(t) maps to u/(1 + u^2)
    const cplx g2 = reference::sumudu_numeric(
        [](double t) { return cplx(std::sin(t), 0.0); }, 0.5);
    CHECK(rel(g2.real(), 0.5 / 1.25) < 1e-9);

    // f(t) = t^{1/2} maps to Gamma(3/2) u^{1/2}; fractional endpoint power
    reference::SumuduOptions opt;
    opt.tol = 1e-10;
    opt.use_endpoint_hint = true;
    opt.endpoint_exponent = 0.5;
    const cplx g3 = reference::sumudu_numeric(
        [](double t) { return cplx(std::sqrt(t), 0.0); }, 2.0, opt);
    CHECK(rel(g3.real(), std::tgamma(1.5) * std::sqrt(2.0)) < 1e-9);
}

TEST_CASE("the endpoint hint decides convergence for singular heads") {
    // f(t) = t^{-0.9} is integrable but defeats plain node doubling
    const auto f = [](double t) { return cplx(std::pow(t, -0.9), 0.0); };

    reference::SumuduOptions strict;
    strict.tol = 1e-12;
    CHECK_THROWS_AS(reference::sumudu_numeric(f, 1.0, strict), QuadratureFailure);

    reference::SumuduOptions hinted;
    hinted.tol = 1e-10;
    hinted.use_endpoint_hint = true;
    hinted.endpoint_exponent = -0.9;
    const cplx g = reference::sumudu_numeric(f, 1.0, hinted);
    CHECK(rel(g.real(), std::tgamma(0.1)) < 1e-8);
}

TEST_CASE("transform argument validation") {
    const auto f = [](double t) { return cplx(std::exp(-t), 0.0); };
    CHECK_THROWS_AS(reference::sumudu_numeric(f, 0.0), DomainError);
    CHECK_THROWS_AS(reference::sumudu_numeric(f, -1.0), DomainError);
}

TEST_CASE("diffusion kernel normalization, peak, and semigroup property") {
    CHECK(rel(reference::heat_kernel(0.0, 1.0, 1.0),
              0.28209479177387814347403972578) < 1e-14);
    CHECK(reference::heat_kernel(3.0, 0.5, 2.0) ==
          doctest::Approx(reference::heat_kernel(-3.0, 0.5, 2.0)).epsilon(1e-15));

    // mass one
    const auto mass = adaptive_gauss_legendre(
        [](double x) { return cplx(reference::heat_kernel(x, 0.7, 1.3), 0.0); },
        -30.0, 30.0, 1e-11);
    CHECK(rel(mass.value.real(), 1.0) < 1e-9);

    // K(., t1) * K(., t2) = K(., t1 + t2)
    const double xq = 0.7;
    const auto conv = adaptive_gauss_legendre(
        [xq](double y) {
            return cplx(reference::heat_kernel(y, 0.4, 1.0) *
                            reference::heat_kernel(xq - y, 0.6, 1.0),
                        0.0);
        },
        -25.0, 25.0, 1e-11);
    CHECK(rel(conv.value.real(), reference::heat_kernel(xq, 1.0, 1.0)) < 1e-8);

    CHECK_THROWS_AS(reference::heat_kernel(0.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(reference::heat_kernel(0.0, 1.0, -1.0), DomainError);
}

TEST_CASE("the traveling-average wave solution matches the cosine identity") {
    const auto g = [](double x) { return std::cos(x); };
    for (double x : {-2.0, 0.0, 1.3}) {
        for (double t : {0.25, 1.0, 4.0}) {
            CAPTURE(x);
            CAPTURE(t);
            CHECK(rel(reference::dalembert(g, x, t), std::cos(x) * std::cos(t)) < 1e-13);
        }
    }
}
