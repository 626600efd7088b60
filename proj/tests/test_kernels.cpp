#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>

#include <fracgreen/errors.hpp>
#include <fracgreen/gamma.hpp>
#include <fracgreen/kernels.hpp>

using namespace fracgreen;
using cplx = std::complex<double>;

namespace {

double rel(cplx got, cplx want) {
    return std::abs(got - want) / std::max(1.0e-300, std::abs(want));
}

}

TEST_CASE("the single kernel reduces to sine and cosine at order two") {
    for (double b : {0.5, 2.0, 9.0}) {
        for (double t : {0.3, 1.0, 2.5}) {
            CAPTURE(b);
            CAPTURE(t);
            const double rb = std::sqrt(b);
            CHECK(rel(kernel_single(2.0, 1.0, {b, 0}, t),
                      {std::sin(rb * t) / rb, 0}) < 1e-12);
            CHECK(rel(kernel_single(2.0, 2.0, {b, 0}, t),
                      {std::cos(rb * t), 0}) < 1e-11);
        }
    }
}

TEST_CASE("the single kernel reduces to the exponential at order one") {
    // the alternating series for exp(-6.8) loses ~6 digits to cancellation,
    // so the bound allows a small multiple of that roundoff floor
    for (double b : {0.2, 1.0, 4.0}) {
        CAPTURE(b);
        CHECK(rel(kernel_single(1.0, 1.0, {b, 0}, 1.7),
                  {std::exp(-b * 1.7), 0}) < 1e-11);
    }
    // purely imaginary relaxation rate rotates instead of decaying
    const cplx got = kernel_single(1.0, 1.0, {0, 2.0}, 0.9);
    CHECK(rel(got, {std::cos(1.8), -std::sin(1.8)}) < 1e-12);
}

TEST_CASE("a zero rate leaves the pure power kernel") {
    for (double alpha : {1.2, 1.7, 2.0}) {
        CAPTURE(alpha);
        const double t = 1.35;
        const cplx k1 = kernel_single(alpha, 1.0, {0, 0}, t);
        CHECK(rel(k1, {std::pow(t, alpha - 1.0) * reciprocal_gamma(alpha), 0}) < 1e-13);
        const cplx k2 = kernel_single(alpha, 2.0, {0, 0}, t);
        CHECK(rel(k2, {std::pow(t, alpha - 2.0) * reciprocal_gamma(alpha - 1.0), 0}) < 1e-13);
    }
}

TEST_CASE("pinned two-relaxation kernel values") {
    CHECK(rel(kernel_two_term(2.0, 1.5, 0.1, 1.0, {1, 0}, 1.0),
              {0.7860394255495517803026320426177774654881, 0}) < 1e-12);
    CHECK(rel(kernel_two_term(1.5, 1.2, 0.05, 2.0, {0, 0}, 1.0),
              {0.5237362713273034727678962266017874923289, 0}) < 1e-12);
}

TEST_CASE("zero coupling short-circuits to the single kernel bit for bit") {
    const struct {
        double alpha, rho;
        cplx b;
        double t;
    } cases[] = {
        {1.8, 1.0, {3.0, 0.0}, 0.7},
        {1.3, 2.0, {0.4, 1.1}, 2.0},
        {2.0, 1.0, {25.0, 0.0}, 1.4},
    };
    for (const auto& c : cases) {
        CAPTURE(c.alpha);
        const cplx one = kernel_single(c.alpha, c.rho, c.b, c.t);
        const cplx two = kernel_two_term(c.alpha, 0.9, 0.0, c.rho, c.b, c.t);
        CHECK(one.real() == two.real());
        CHECK(one.imag() == two.imag());
    }
}

TEST_CASE("the coupled series converges where the growth ratio is small") {
    // with |lambda| t^{alpha-beta} << 1 the tail is geometric, so a modest
    // r cap and the default must agree to the requested tolerance
    const cplx full = kernel_two_term(1.7, 1.3, 0.2, 1.0, {2.0, 0}, 0.9, 1e-12, 64);
    const cplx short_cap = kernel_two_term(1.7, 1.3, 0.2, 1.0, {2.0, 0}, 0.9, 1e-12, 24);
    CHECK(std::abs(full - short_cap) < 1e-12);
}

TEST_CASE("divergent coupled series are refused with the growth ratio named") {
    try {
        kernel_two_term(1.8, 1.0, 50.0, 1.0, {1.0, 0}, 3.0, 1e-10, 64);
        FAIL("expected SeriesDivergence");
    } catch (const SeriesDivergence& e) {
        CHECK(std::string(e.what()).find("growth ratio") != std::string::npos);
    }
}

TEST_CASE("kernel argument validation") {
    CHECK_THROWS_AS(kernel_single(1.5, 1.0, {1, 0}, 0.0), DomainError);
    CHECK_THROWS_AS(kernel_single(1.5, 1.0, {1, 0}, -2.0), DomainError);
    CHECK_THROWS_AS(kernel_single(1.5, 1.0, {1, 0}, 1.0, 0.0), DomainError);
    // the second order must sit strictly below the first when coupled
    CHECK_THROWS_AS(kernel_two_term(1.5, 1.5, 0.1, 1.0, {1, 0}, 1.0), DomainError);
    CHECK_THROWS_AS(kernel_two_term(1.5, 1.7, 0.1, 1.0, {1, 0}, 1.0), DomainError);
    CHECK_THROWS_AS(kernel_two_term(1.5, 1.2, 0.1, 1.0, {1, 0}, 1.0, 1e-10, 0), DomainError);
}
