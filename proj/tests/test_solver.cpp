#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include <fracgreen/errors.hpp>
#include <fracgreen/reference.hpp>
#include <fracgreen/spectral_solver.hpp>

using namespace fracgreen;
using cplx = std::complex<double>;

namespace {

constexpr double kRoot2Pi = 2.5066282746310005024157652848110;

std::vector<double> gaussian(const Grid1D& grid, double center, double width,
                             double amplitude) {
    std::vector<double> v(grid.n());
    for (std::size_t i = 0; i < grid.n(); ++i) {
        const double u = (grid.x(i) - center) / width;
        v[i] = amplitude * std::exp(-0.5 * u * u);
    }
    return v;
}

SpaceOperator laplacian() {
    return SpaceOperator{{RieszFellerTerm{1.0, 2.0, 0.0}}};
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double mass_of(const SolutionField& sol) {
    double s = 0.0;
    for (double v : sol.values) s += v;
    return s * sol.grid.dx();
}

}

TEST_CASE("the transform maps a delta datum to a flat spectrum") {
    const Grid1D grid(-10.0, 10.0, 64);
    const SpectralField hat = forward_transform(InitialData::delta_data(), grid);
    REQUIRE(hat.values.size() == 64);
    for (const auto& c : hat.values) {
        CHECK(c.real() == doctest::Approx(1.0 / kRoot2Pi).epsilon(1e-15));
        CHECK(c.imag() == 0.0);
    }
}

TEST_CASE("the transform of a sampled gaussian matches the continuum image") {
    const Grid1D grid(-20.0, 20.0, 256);
    const SpectralField hat =
        forward_transform(InitialData::sampled_data(gaussian(grid, 0.0, 1.0, 1.0)), grid);
    // unit-width gaussian transforms to exp(-k^2/2)
    for (std::size_t i : {std::size_t{0}, std::size_t{1}, std::size_t{5},
                          std::size_t{12}, std::size_t{255}}) {
        const double k = grid.k(i);
        CAPTURE(k);
        const double want = std::exp(-0.5 * k * k);
        CHECK(std::abs(hat.values[i] - cplx(want, 0.0)) < 1e-12 * std::max(1.0, want));
    }
}

TEST_CASE("the transform refuses sampled data that do not decay at the edges") {
    const Grid1D grid(-10.0, 10.0, 64);
    CHECK_THROWS_AS(
        forward_transform(InitialData::sampled_data(std::vector<double>(64, 1.0)), grid),
        EdgeDecayViolation);
    // and sampled data must match the grid
    CHECK_THROWS_AS(
        forward_transform(InitialData::sampled_data({1.0, 2.0, 3.0}), grid),
        DomainError);
}

TEST_CASE("the sub-first-order path at order one is classical diffusion") {
    const Grid1D grid(-20.0, 20.0, 512);
    ProblemSpec spec;
    spec.alpha = 1.0;
    spec.op = laplacian();
    spec.f = InitialData::delta_data();

    const SolutionField sol = solve_corollary2(spec, 0.5, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n(); ++i)
        worst = std::max(worst, std::abs(sol.values[i] -
                                         reference::heat_kernel(grid.x(i), 0.5, 1.0)));
    CHECK(worst < 1e-10);
    CHECK(sol.t == 0.5);
    CHECK(sol.max_imag_residual < 1e-12);
}

TEST_CASE("the single-order path at order two propagates traveling averages") {
    const Grid1D grid(-20.0, 20.0, 512);
    ProblemSpec spec;
    spec.alpha = 2.0;
    spec.op = laplacian();
    // at order two, g carries the displacement (the order alpha-2 trace)
    spec.g = InitialData::sampled_data(gaussian(grid, 0.0, 1.0, 1.0));

    const double t = 2.0;
    const SolutionField sol = solve_theorem1(spec, t, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n(); ++i) {
        const double x = grid.x(i);
        const double want = 0.5 * (std::exp(-0.5 * (x - t) * (x - t)) +
                                   std::exp(-0.5 * (x + t) * (x + t)));
        worst = std::max(worst, std::abs(sol.values[i] - want));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("the discrete mass identity holds to roundoff") {
    const Grid1D grid(-20.0, 20.0, 256);
    ProblemSpec spec;
    spec.alpha = 1.6;
    spec.op.terms = {{1.0, 1.8, 0.0}, {0.4, 0.7, 0.0}};
    spec.f = InitialData::sampled_data(gaussian(grid, -1.0, 1.2, 0.8));
    spec.g = InitialData::sampled_data(gaussian(grid, 2.0, 0.9, 0.5));

    const SolutionField sol = solve_theorem1(spec, 0.9, grid);
    const double mass = mass_of(sol);
    CHECK(std::abs(mass - kRoot2Pi * sol.zero_mode.real()) <
          1e-12 * std::max(1.0, std::abs(mass)));
    CHECK(std::abs(sol.zero_mode.imag()) < 1e-14);
}

TEST_CASE("the symmetric path agrees with the general path to the last bit") {
    const Grid1D grid(-20.0, 20.0, 128);
    ProblemSpec spec;
    spec.alpha = 1.7;
    spec.op.terms = {{1.0, 1.5, 0.0}, {0.5, 0.8, 0.0}};
    spec.f = InitialData::sampled_data(gaussian(grid, 0.0, 1.0, 1.0));
    spec.g = InitialData::sampled_data(gaussian(grid, 1.0, 0.8, 0.5));

    const SolutionField s1 = solve_theorem1(spec, 0.8, grid);
    const SolutionField s2 = solve_corollary1(spec, 0.8, grid);
    REQUIRE(s1.values.size() == s2.values.size());
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < s1.values.size(); ++i)
        if (s1.values[i] != s2.values[i]) ++mismatches;
    CHECK(mismatches == 0);
    CHECK(s1.zero_mode == s2.zero_mode);
}

TEST_CASE("the two-order path with zero coupling matches the single-order path exactly") {
    const Grid1D grid(-20.0, 20.0, 128);
    ProblemSpec spec;
    spec.alpha = 1.4;
    spec.lambda = 0.0;
    spec.beta = 0.0;
    spec.op.terms = {{0.8, 1.9, 0.0}};
    spec.f = InitialData::sampled_data(gaussian(grid, 0.5, 1.5, 1.0));

    const SolutionField s1 = solve_theorem1(spec, 1.1, grid);
    const SolutionField s2 = solve_theorem2(spec, 1.1, grid);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < s1.values.size(); ++i)
        if (s1.values[i] != s2.values[i]) ++mismatches;
    CHECK(mismatches == 0);
}

TEST_CASE("the two-order series is insensitive to the cap once converged") {
    const Grid1D grid(-15.0, 15.0, 128);
    ProblemSpec spec;
    spec.alpha = 1.8;
    spec.beta = 1.3;
    spec.lambda = 0.15;
    spec.op = laplacian();
    spec.f = InitialData::sampled_data(gaussian(grid, 0.0, 1.0, 1.0));

    const SolutionField full = solve_theorem2(spec, 0.7, grid, 1e-10, 64);
    const SolutionField capped = solve_theorem2(spec, 0.7, grid, 1e-10, 16);
    CHECK(max_gap(full.values, capped.values) < 1e-9);
}

TEST_CASE("zero data produce the zero solution") {
    const Grid1D grid(-10.0, 10.0, 64);
    ProblemSpec spec;
    spec.alpha = 1.5;
    spec.op = laplacian();

    const SolutionField sol = solve_theorem1(spec, 1.0, grid);
    for (double v : sol.values) CHECK(v == 0.0);
    CHECK(sol.zero_mode == cplx(0.0, 0.0));
}

TEST_CASE("forcing enters linearly") {
    const Grid1D grid(-15.0, 15.0, 128);
    ProblemSpec data_only;
    data_only.alpha = 1.8;
    data_only.op.terms = {{1.0, 1.6, 0.0}};
    data_only.f = InitialData::sampled_data(gaussian(grid, 0.0, 1.0, 1.0));

    SourceTerm forcing;
    forcing.kind = SourceTerm::Kind::separable;
    forcing.spatial = gaussian(grid, 1.0, 0.8, 0.6);
    forcing.time_profile = [](double t) { return std::exp(-0.3 * t); };

    ProblemSpec source_only = data_only;
    source_only.f = InitialData::zero_data();
    source_only.source = forcing;

    ProblemSpec both = data_only;
    both.source = forcing;

    const double t = 0.8;
    const SolutionField a = solve_theorem1(both, t, grid);
    const SolutionField b = solve_theorem1(data_only, t, grid);
    const SolutionField c = solve_theorem1(source_only, t, grid);

    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n(); ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i] - c.values[i]));
    CHECK(worst < 1e-9);
}

TEST_CASE("sampled forcing with linear time dependence matches the separable form") {
    const Grid1D grid(-15.0, 15.0, 128);
    const std::vector<double> shape = gaussian(grid, -0.5, 1.0, 1.0);

    ProblemSpec separable;
    separable.alpha = 1.6;
    separable.op = laplacian();
    separable.source.kind = SourceTerm::Kind::separable;
    separable.source.spatial = shape;
    separable.source.time_profile = [](double t) { return 1.0 + 0.5 * t; };

    // the same forcing tabulated on a coarse mesh; linear interpolation in t
    // reproduces a linear profile exactly, so the two solves must agree
    ProblemSpec sampled = separable;
    sampled.source = SourceTerm{};
    sampled.source.kind = SourceTerm::Kind::sampled;
    sampled.source.time_mesh = {0.0, 0.4, 1.0};
    for (double tm : sampled.source.time_mesh) {
        std::vector<double> slice = shape;
        for (double& v : slice) v *= 1.0 + 0.5 * tm;
        sampled.source.slices.push_back(std::move(slice));
    }

    const SolutionField a = solve_theorem1(separable, 1.0, grid);
    const SolutionField b = solve_theorem1(sampled, 1.0, grid);
    CHECK(max_gap(a.values, b.values) < 1e-8);
}

TEST_CASE("the time convolution is only defined on grid wavenumbers") {
    const Grid1D grid(-10.0, 10.0, 64);
    ProblemSpec spec;
    spec.alpha = 1.5;
    spec.op = laplacian();
    spec.source.kind = SourceTerm::Kind::separable;
    spec.source.spatial = gaussian(grid, 0.0, 1.0, 1.0);
    spec.source.time_profile = [](double) { return 1.0; };

    CHECK_THROWS_AS(source_convolution(spec, grid, 0.1234, 1.0), DomainError);
    const cplx ok = source_convolution(spec, grid, grid.k(3), 1.0);
    CHECK(std::isfinite(ok.real()));
    CHECK(std::isfinite(ok.imag()));
}

TEST_CASE("each path enforces its order and data constraints") {
    const Grid1D grid(-10.0, 10.0, 64);
    ProblemSpec spec;
    spec.alpha = 1.5;
    spec.op = laplacian();
    spec.f = InitialData::delta_data();

    // t and tol windows
    CHECK_THROWS_AS(solve_theorem1(spec, 0.0, grid), DomainError);
    CHECK_THROWS_AS(solve_theorem1(spec, -1.0, grid), DomainError);
    CHECK_THROWS_AS(solve_theorem1(spec, 1.0, grid, 0.5), DomainError);

    // order windows per path
    ProblemSpec low = spec;
    low.alpha = 0.8;
    CHECK_THROWS_AS(solve_theorem1(low, 1.0, grid), DomainError);
    CHECK_THROWS_AS(solve_theorem2(low, 1.0, grid), DomainError);
    ProblemSpec high = spec;
    high.alpha = 1.2;
    CHECK_THROWS_AS(solve_corollary2(high, 1.0, grid), DomainError);

    // coupling restrictions
    ProblemSpec coupled = spec;
    coupled.lambda = 0.3;
    coupled.beta = 1.2;
    CHECK_THROWS_AS(solve_theorem1(coupled, 1.0, grid), DomainError);
    coupled.beta = 0.9;
    CHECK_THROWS_AS(solve_theorem2(coupled, 1.0, grid), DomainError);

    // the symmetric path rejects asymmetry
    ProblemSpec skew = spec;
    skew.op.terms = {{1.0, 1.2, 0.4}};
    CHECK_THROWS_AS(solve_corollary1(skew, 1.0, grid), ThetaNotZero);

    // the Green-function path needs the delta datum and no second trace
    ProblemSpec green = spec;
    green.alpha = 0.9;
    green.f = InitialData::sampled_data(gaussian(grid, 0.0, 1.0, 1.0));
    CHECK_THROWS_AS(solve_corollary2(green, 1.0, grid), DomainError);
    green.f = InitialData::delta_data();
    green.g = InitialData::sampled_data(gaussian(grid, 0.0, 1.0, 1.0));
    CHECK_THROWS_AS(solve_corollary2(green, 1.0, grid), DomainError);
}
