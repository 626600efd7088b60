#include <fracgreen/validate.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <fracgreen/errors.hpp>
#include <fracgreen/kernels.hpp>
#include <fracgreen/mlf.hpp>
#include <fracgreen/reference.hpp>
#include <fracgreen/spectral_solver.hpp>

namespace fracgreen::validate {
namespace {

using cplx = std::complex<double>;
using clock_type = std::chrono::steady_clock;

constexpr double kRoot2Pi = 2.5066282746310005024157652848110;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// Deterministic uniform doubles from a fixed-seed splitmix64 stream, so every
// acceptance run checks the identical point set on every platform. The
// standard distributions are implementation-defined and unsuitable here.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double unif() { return static_cast<double>(next() >> 11) * 0x1p-53; }
    double unif(double lo, double hi) { return lo + (hi - lo) * unif(); }
    int uint_below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    bool coin() { return (next() & 1) != 0; }
};

std::vector<double> gaussian_samples(const Grid1D& grid, double center,
                                     double width, double amplitude) {
    std::vector<double> v(grid.n());
    for (std::size_t i = 0; i < grid.n(); ++i) {
        const double u = (grid.x(i) - center) / width;
        v[i] = amplitude * std::exp(-u * u);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Invariant records. Every spectral solve performed by the criteria below
// registers its realness and mass-balance margins; the final criterion
// re-checks them in one place.
// ---------------------------------------------------------------------------
struct InvariantRecord {
    std::string label;
    double imag_residual = 0.0;   // largest imaginary part discarded
    double max_abs = 0.0;         // largest |N| on the grid
    double mass_gap = 0.0;        // |dx*sum(N) - sqrt(2 pi) * zero_mode|
    double mass_scale = 1.0;      // max(1, |dx*sum(N)|)
};

std::vector<InvariantRecord>& records() {
    static std::vector<InvariantRecord> r;
    return r;
}

void record_run(const std::string& label, const SolutionField& sol) {
    InvariantRecord rec;
    rec.label = label;
    rec.imag_residual = sol.max_imag_residual;
    double mass = 0.0;
    for (double v : sol.values) {
        rec.max_abs = std::max(rec.max_abs, std::abs(v));
        mass += v;
    }
    mass *= sol.grid.dx();
    rec.mass_gap = std::abs(cplx(mass, 0.0) - kRoot2Pi * sol.zero_mode);
    rec.mass_scale = std::max(1.0, std::abs(mass));
    records().push_back(std::move(rec));
}

CheckResult finish(CheckResult r, clock_type::time_point t0) {
    r.seconds = seconds_since(t0);
    return r;
}

ProblemSpec symmetric_spec(double alpha, double mu, double gamma) {
    ProblemSpec spec;
    spec.alpha = alpha;
    spec.op.terms = {RieszFellerTerm{mu, gamma, 0.0}};
    return spec;
}

// ---------------------------------------------------------------------------
// Mittag-Leffler conformance envelope (shared by the acceptance criterion and
// the mlf suite). The sampling regions and their |z| ceilings were fixed by
// sweeping the evaluator against the big-float oracle and mapping the
// pass/fail boundary at arg(z) = pi, the direction of worst cancellation;
// each ceiling sits below that boundary with at least a 1.5x margin.
// ---------------------------------------------------------------------------

double arg_lo(double alpha) {
    return std::min(M_PI, std::max(0.5 * M_PI, (0.5 * alpha + 0.05) * M_PI));
}

// Largest |z| at which the contour-integral backstop still certifies
// tolerance comfortably, as a function of order and pole multiplicity.
double wedge_cap(double alpha, double delta) {
    return std::max(1.5, 30.0 * std::exp(2.3 * (alpha - 1.3)) / delta);
}

void finish_point(MLArgs& a, Rng& rng, double lg) {
    double ph = rng.unif(arg_lo(a.alpha), M_PI);
    if (rng.coin()) ph = -ph;
    a.z = std::polar(std::pow(10.0, lg), ph);
}

// First-order kernels, full (alpha, beta) rectangle.
MLArgs sample_r1(Rng& rng) {
    MLArgs a;
    a.alpha = rng.unif(0.05, 2.0);
    a.beta = rng.unif(-2.0, 5.0);
    a.delta = 1.0;
    const double lg_hi = std::min(4.0, 3.5 * a.alpha);
    const double lg_tail = 1.7 * a.alpha;  // |z|^(1/alpha) >= 50
    double lg;
    if (a.alpha < 1.05) {
        // Below alpha = 1 the exponentially small Stokes terms keep the error
        // estimate above target at moderate |z|^(1/alpha), and the large-|z|
        // expansion inherits the same pessimism; stay where the power series
        // alone certifies the result.
        lg = rng.unif(-2.0, a.alpha * std::log10(7.5));
    } else if (a.beta > a.alpha + 0.9) {
        // Outside the contour backstop's parameter wedge: power-series zone
        // or the large-|z| expansion zone (poles on-sheet, handled exactly).
        lg = rng.coin() ? rng.unif(-2.0, 0.903 * a.alpha)  // |z|^(1/alpha) <= 8
                        : rng.unif(lg_tail, lg_hi);
    } else if (a.alpha < 1.3) {
        // Backstop available but weak at low alpha: skip the band between its
        // reach and the large-|z| expansion.
        lg = rng.coin() ? rng.unif(-2.0, std::log10(wedge_cap(a.alpha, 1.0)))
                        : rng.unif(lg_tail, lg_hi);
    } else {
        lg = rng.unif(-2.0, lg_hi);
    }
    finish_point(a, rng, lg);
    return a;
}

// Moderate pole multiplicities, as produced by short two-order expansions.
MLArgs sample_r2(Rng& rng) {
    MLArgs a;
    a.delta = 2 + rng.uint_below(7);  // 2..8
    a.alpha = rng.unif(1.05, 2.0);
    a.beta = rng.unif(-2.0, std::min(5.0, a.alpha * a.delta + 0.9));
    const double lg_tail = 1.778 * a.alpha;  // |z|^(1/alpha) >= 60
    double lg;
    if (lg_tail <= 2.9 && rng.coin()) lg = rng.unif(lg_tail, 3.0);
    else lg = rng.unif(-2.0, std::log10(wedge_cap(a.alpha, a.delta)));
    finish_point(a, rng, lg);
    return a;
}

// High multiplicities from deep two-order expansions; the backstop is the
// only route, so |z| stays under its measured ceiling.
MLArgs sample_r3(Rng& rng) {
    MLArgs a;
    a.delta = 9 + rng.uint_below(56);  // 9..64
    a.alpha = rng.unif(1.3, 2.0);
    a.beta = rng.unif(-2.0, std::min(5.0, a.alpha * a.delta + 0.9));
    const double zcap = std::max(0.9, wedge_cap(a.alpha, a.delta));
    finish_point(a, rng, rng.unif(-2.0, std::log10(zcap)));
    return a;
}

// Beyond the documented envelope: high multiplicity at |z| the backstop
// cannot certify. Here refusal is legitimate; a silently wrong answer is not.
MLArgs sample_hard(Rng& rng) {
    MLArgs a;
    a.delta = 16 + rng.uint_below(49);  // 16..64
    a.alpha = rng.unif(1.3, 2.0);
    a.beta = rng.unif(-2.0, std::min(5.0, a.alpha * a.delta + 0.9));
    const double lg = rng.unif(std::log10(5.0), std::log10(30.0));
    finish_point(a, rng, lg);
    return a;
}

std::string describe_point(const MLArgs& a) {
    return fmt("alpha=%.4f beta=%.4f delta=%g |z|=%.5g arg=%.4f", a.alpha,
               a.beta, a.delta, std::abs(a.z), std::arg(a.z));
}

// ---------------------------------------------------------------------------
// A1: single-order path at alpha = 1, gamma = 2 against the closed-form
// diffusion kernel.
// ---------------------------------------------------------------------------
CheckResult heat_limit() {
    const auto t0 = clock_type::now();
    CheckResult r{"A1", "diffusion limit vs Gaussian kernel", false, "", 0.0};

    const Grid1D grid(-30.0, 30.0, 2048);
    ProblemSpec spec = symmetric_spec(1.0, 1.0, 2.0);
    spec.f = InitialData::delta_data();
    const SolutionField sol = solve_corollary2(spec, 1.0, grid, 1e-10);
    record_run("A1 diffusion", sol);

    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n(); ++i) {
        const double truth = reference::heat_kernel(grid.x(i), 1.0, 1.0);
        worst = std::max(worst, std::abs(sol.values[i] - truth));
    }
    const double tol = 1e-6;
    r.passed = worst < tol;
    r.detail = fmt("max |N - kernel| = %.3e (tolerance %.0e); "
                   "n=2048 on [-30,30], t=1", worst, tol);
    return finish(std::move(r), t0);
}

// ---------------------------------------------------------------------------
// A2: single-order path at alpha = 2, gamma = 2 against d'Alembert.
// ---------------------------------------------------------------------------
CheckResult dalembert_limit() {
    const auto t0 = clock_type::now();
    CheckResult r{"A2", "wave limit vs d'Alembert", false, "", 0.0};

    const Grid1D grid(-20.0, 20.0, 1024);
    ProblemSpec spec = symmetric_spec(2.0, 1.0, 2.0);
    spec.g = InitialData::sampled_data(gaussian_samples(grid, 0.0, 1.0, 1.0));
    const SolutionField sol = solve_theorem1(spec, 1.0, grid, 1e-10);
    record_run("A2 wave", sol);

    const auto g_fn = [](double x) { return std::exp(-x * x); };
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n(); ++i) {
        const double truth = reference::dalembert(g_fn, grid.x(i), 1.0);
        worst = std::max(worst, std::abs(sol.values[i] - truth));
    }
    const double tol = 1e-6;
    r.passed = worst < tol;
    r.detail = fmt("max |N - dalembert| = %.3e (tolerance %.0e); "
                   "n=1024 on [-20,20], t=1", worst, tol);
    return finish(std::move(r), t0);
}

// ---------------------------------------------------------------------------
// A3: alpha = 1 with the order-1 symmetric operator against the Lorentzian
// density. The wide domain keeps the periodization error of the slowly
// decaying tails far below the tolerance; accuracy is measured on |x| <= 15.
// ---------------------------------------------------------------------------
CheckResult cauchy_limit() {
    const auto t0 = clock_type::now();
    CheckResult r{"A3", "order-1 operator limit vs Lorentzian density", false,
                  "", 0.0};

    const Grid1D grid(-1000.0, 1000.0, 32768);
    ProblemSpec spec = symmetric_spec(1.0, 1.0, 1.0);
    spec.f = InitialData::delta_data();
    const SolutionField sol = solve_corollary2(spec, 1.0, grid, 1e-10);
    record_run("A3 lorentzian", sol);

    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n(); ++i) {
        const double x = grid.x(i);
        if (std::abs(x) > 15.0) continue;
        const double truth = 1.0 / (M_PI * (1.0 + x * x));
        worst = std::max(worst, std::abs(sol.values[i] - truth));
    }
    const double tol = 1e-5;
    r.passed = worst < tol;
    r.detail = fmt("max |N - density| = %.3e on |x|<=15 (tolerance %.0e); "
                   "n=32768 on [-1000,1000], t=1", worst, tol);
    return finish(std::move(r), t0);
}

// ---------------------------------------------------------------------------
// A4: generalized Mittag-Leffler evaluator against the big-float oracle over
// the documented envelope, plus elementary identities and an out-of-envelope
// honesty section (refusal allowed there, silent error is not).
// ---------------------------------------------------------------------------
CheckResult mlf_conformance() {
    const auto t0 = clock_type::now();
    CheckResult r{"A4", "Mittag-Leffler conformance vs big-float oracle",
                  false, "", 0.0};

    int bad = 0;
    std::string first_bad;
    auto note_bad = [&](const std::string& what) {
        ++bad;
        if (first_bad.empty()) first_bad = what;
    };

    // Elementary identities at machine-accuracy scale.
    double worst_ident = 0.0;
    {
        Rng rng(0x1dea71ebull);
        for (int i = 0; i < 20; ++i) {
            const cplx z = std::polar(rng.unif(0.1, 20.0),
                                      rng.unif(-M_PI, M_PI));
            const cplx v = mlf_eval({1.0, 1.0, 1.0, z}, 1e-12).value;
            const cplx truth = std::exp(z);
            worst_ident = std::max(worst_ident, std::abs(v - truth) /
                                                    std::max(1.0, std::abs(truth)));
        }
        for (int i = 0; i < 20; ++i) {
            const double x = rng.unif(0.0, 20.0);
            const cplx v = mlf_eval({2.0, 1.0, 1.0, cplx(-x * x, 0.0)}, 1e-12).value;
            worst_ident = std::max(worst_ident, std::abs(v - std::cos(x)));
        }
        for (int i = 0; i < 20; ++i) {
            const double x = rng.unif(0.1, 20.0);
            const cplx v = mlf_eval({2.0, 2.0, 1.0, cplx(-x * x, 0.0)}, 1e-12).value;
            worst_ident = std::max(worst_ident, std::abs(v - std::sin(x) / x));
        }
        if (worst_ident > 1e-10) note_bad(fmt("identity gap %.3e", worst_ident));
    }

    // Envelope conformance against the oracle.
    Rng rng(0x5eedf00dull);
    double worst_rel = 0.0;
    auto run_region = [&](const char* name, int count, MLArgs (*gen)(Rng&)) {
        for (int i = 0; i < count; ++i) {
            const MLArgs a = gen(rng);
            try {
                const MLResult res = mlf_eval(a, 3e-11);
                const auto big = reference::mlf_bigfloat(a, 100);
                const double rel = std::abs(res.value - big.value) /
                                   std::max(1.0, std::abs(big.value));
                worst_rel = std::max(worst_rel, rel);
                if (rel > 1e-10)
                    note_bad(fmt("%s rel %.3e at %s", name, rel,
                                 describe_point(a).c_str()));
            } catch (const NonConvergence&) {
                note_bad(fmt("%s refused inside envelope at %s", name,
                             describe_point(a).c_str()));
            }
        }
    };
    run_region("R1", 250, sample_r1);
    run_region("R2", 150, sample_r2);
    run_region("R3", 100, sample_r3);

    // Honesty outside the envelope.
    int hard_ok = 0, hard_refused = 0;
    for (int i = 0; i < 40; ++i) {
        const MLArgs a = sample_hard(rng);
        try {
            const MLResult res = mlf_eval(a, 3e-11);
            const auto big = reference::mlf_bigfloat(a, 100);
            const double gap = std::abs(res.value - big.value);
            const double allowed = 3.0 * res.est_abs_error +
                                   1e-10 * std::max(1.0, std::abs(big.value));
            if (gap <= allowed) ++hard_ok;
            else
                note_bad(fmt("hard-region estimate dishonest (gap %.3e, "
                             "claimed %.3e) at %s", gap, res.est_abs_error,
                             describe_point(a).c_str()));
        } catch (const NonConvergence&) {
            ++hard_refused;
        }
    }

    r.passed = bad == 0;
    r.detail = fmt("500 envelope points within 1e-10 (worst rel %.3e), "
                   "60 identity points (worst %.3e), hard region %d converged "
                   "honestly / %d refused", worst_rel, worst_ident, hard_ok,
                   hard_refused);
    if (!r.passed)
        r.detail = fmt("%d conformance failures; first: %s", bad,
                       first_bad.c_str());
    return finish(std::move(r), t0);
}

// ---------------------------------------------------------------------------
// A5: scale-preserving transform pair round trip. The time kernel evaluated
// pointwise and pushed through the numerical transform must reproduce the
// rational image u^{alpha-rho} / (1 + b u^alpha).
// ---------------------------------------------------------------------------
CheckResult sumudu_roundtrip() {
    const auto t0 = clock_type::now();
    CheckResult r{"A5", "kernel transform pair round trip", false, "", 0.0};

    Rng rng(0xa5a5f00dull);
    double worst = 0.0;
    std::string worst_at = "-";
    int count = 0;
    for (int draw = 0; draw < 20; ++draw) {
        const double rho = rng.coin() ? 1.0 : 2.0;
        // rho = 2 kernels behave like t^{alpha-2} near zero; keep the
        // exponent above -0.8 so the transform integral stays well-posed.
        const double alpha = (rho < 1.5) ? rng.unif(0.3, 2.0) : rng.unif(1.2, 2.0);
        const double b = rng.unif(0.2, 5.0);

        const auto kernel = [&](double tau) {
            return kernel_single(alpha, rho, cplx(b, 0.0), tau, 1e-12);
        };
        reference::SumuduOptions opt;
        opt.tol = 1e-8;
        const double eta = alpha - rho;
        if (std::abs(eta - std::round(eta)) > 1e-9) {
            opt.use_endpoint_hint = true;
            opt.endpoint_exponent = eta;
        }

        for (const double u : {0.2, 0.5, 1.0}) {
            const cplx image = reference::sumudu_numeric(kernel, u, opt);
            const cplx expected =
                std::pow(u, alpha - rho) / (1.0 + b * std::pow(u, alpha));
            const double gap = std::abs(image - expected);
            ++count;
            if (gap > worst) {
                worst = gap;
                worst_at = fmt("alpha=%.4f rho=%g b=%.4f u=%g", alpha, rho, b, u);
            }
        }
    }
    const double tol = 1e-6;
    r.passed = worst < tol;
    r.detail = fmt("%d transforms, max |image - rational| = %.3e "
                   "(tolerance %.0e) at %s", count, worst, tol,
                   worst_at.c_str());
    return finish(std::move(r), t0);
}

// ---------------------------------------------------------------------------
// A6: reduction identities. The symmetric-operator path and the two-order
// path with a vanishing second term must reproduce the general single-order
// path exactly, not merely approximately.
// ---------------------------------------------------------------------------
CheckResult reductions() {
    const auto t0 = clock_type::now();
    CheckResult r{"A6", "reduction identities between solution paths", false,
                  "", 0.0};

    Rng rng(0xbead5eedull);
    const Grid1D grid(-20.0, 20.0, 256);
    double worst = 0.0;
    for (int c = 0; c < 10; ++c) {
        ProblemSpec spec;
        spec.alpha = rng.unif(1.05, 2.0);
        const int n_terms = 1 + rng.uint_below(3);
        spec.op.terms.clear();
        for (int j = 0; j < n_terms; ++j)
            spec.op.terms.push_back(
                RieszFellerTerm{rng.unif(0.1, 3.0), rng.unif(0.3, 2.0), 0.0});
        spec.f = InitialData::sampled_data(gaussian_samples(
            grid, rng.unif(-3.0, 3.0), rng.unif(0.5, 2.0), rng.unif(0.5, 2.0)));
        if (rng.coin())
            spec.g = InitialData::sampled_data(gaussian_samples(
                grid, rng.unif(-3.0, 3.0), rng.unif(0.5, 2.0), rng.unif(0.5, 2.0)));

        const SolutionField s1 = solve_theorem1(spec, 0.7, grid, 1e-10);
        const SolutionField s2 = solve_corollary1(spec, 0.7, grid, 1e-10);
        const SolutionField s3 = solve_theorem2(spec, 0.7, grid, 1e-10);
        if (c == 0) record_run("A6 reduction", s1);

        for (std::size_t i = 0; i < grid.n(); ++i) {
            worst = std::max(worst, std::abs(s1.values[i] - s2.values[i]));
            worst = std::max(worst, std::abs(s1.values[i] - s3.values[i]));
        }
    }
    const double tol = 1e-12;
    r.passed = worst <= tol;
    r.detail = fmt("10 random operators, max deviation between paths = %.3e "
                   "(tolerance %.0e)", worst, tol);
    return finish(std::move(r), t0);
}

// ---------------------------------------------------------------------------
// A7: cross-validation against the independent time-stepping solver, with a
// step-halving ladder. The marcher is first-order in dt, so the gap to the
// transform solution must stay small and the FD-to-FD differences must shrink
// at a fitted order near one.
// ---------------------------------------------------------------------------
struct LadderOutcome {
    std::vector<double> gaps;    // max |FD - spectral| per rung
    double fitted_order = 0.0;   // from FD-to-FD successive differences
};

LadderOutcome fd_ladder(const ProblemSpec& spec, const SolutionField& target,
                        const Grid1D& grid, const std::vector<int>& nts,
                        double t_final) {
    LadderOutcome out;
    std::vector<std::vector<double>> fields;
    for (const int nt : nts) {
        const reference::FDConfig cfg{.grid = grid,
                                      .nt = nt,
                                      .dt = t_final / nt,
                                      .alpha = spec.alpha,
                                      .beta = spec.beta,
                                      .lambda = spec.lambda,
                                      .op = spec.op,
                                      .stability_limit = 1.0};
        reference::FDInitial init{spec.f, spec.g, spec.f2, spec.g2};
        const SolutionField fd = reference::gl_fd_solver(cfg, init, spec.source);
        double gap = 0.0;
        for (std::size_t i = 0; i < grid.n(); ++i)
            gap = std::max(gap, std::abs(fd.values[i] - target.values[i]));
        out.gaps.push_back(gap);
        fields.push_back(fd.values);
    }
    // Order from successive FD differences; the common spatial
    // discretization error cancels in these.
    std::vector<double> diffs;
    for (std::size_t j = 0; j + 1 < fields.size(); ++j) {
        double d = 0.0;
        for (std::size_t i = 0; i < grid.n(); ++i)
            d = std::max(d, std::abs(fields[j][i] - fields[j + 1][i]));
        diffs.push_back(d);
    }
    double order_sum = 0.0;
    int order_count = 0;
    for (std::size_t j = 0; j + 1 < diffs.size(); ++j) {
        if (diffs[j + 1] > 0.0) {
            order_sum += std::log2(diffs[j] / diffs[j + 1]);
            ++order_count;
        }
    }
    out.fitted_order = order_count ? order_sum / order_count : 0.0;
    return out;
}

CheckResult fd_cross() {
    const auto t0 = clock_type::now();
    CheckResult r{"A7", "cross-validation against time-stepping solver", false,
                  "", 0.0};

    const Grid1D grid(-20.0, 20.0, 256);
    const double gap_tol = 2e-2;
    const double order_floor = 0.8;

    // Sub-diffusive Green function from a delta datum.
    ProblemSpec spec_a = symmetric_spec(0.8, 1.0, 2.0);
    spec_a.f = InitialData::delta_data();
    const SolutionField target_a = solve_corollary2(spec_a, 1.0, grid, 1e-10);
    record_run("A7 sub-diffusive", target_a);
    const LadderOutcome la = fd_ladder(spec_a, target_a, grid,
                                       {1024, 2048, 4096}, 1.0);

    // Super-diffusive smooth datum.
    ProblemSpec spec_b = symmetric_spec(1.5, 1.0, 2.0);
    spec_b.f = InitialData::sampled_data(gaussian_samples(grid, 0.0, 1.0, 1.0));
    const SolutionField target_b = solve_theorem1(spec_b, 1.0, grid, 1e-10);
    record_run("A7 super-diffusive", target_b);
    const LadderOutcome lb = fd_ladder(spec_b, target_b, grid,
                                       {128, 256, 512}, 1.0);

    double worst_gap = 0.0;
    for (double g : la.gaps) worst_gap = std::max(worst_gap, g);
    for (double g : lb.gaps) worst_gap = std::max(worst_gap, g);
    const double min_order = std::min(la.fitted_order, lb.fitted_order);

    r.passed = worst_gap < gap_tol && min_order >= order_floor;
    r.detail = fmt("alpha=0.8 gaps %.3e/%.3e/%.3e (order %.2f), "
                   "alpha=1.5 gaps %.3e/%.3e/%.3e (order %.2f); "
                   "gap tolerance %.0e, order floor %.1f",
                   la.gaps[0], la.gaps[1], la.gaps[2], la.fitted_order,
                   lb.gaps[0], lb.gaps[1], lb.gaps[2], lb.fitted_order,
                   gap_tol, order_floor);
    return finish(std::move(r), t0);
}

// Two-order equation against the marcher (suite-only companion to A7).
CheckResult two_term_cross() {
    const auto t0 = clock_type::now();
    CheckResult r{"F2", "two-order equation vs time-stepping solver", false,
                  "", 0.0};

    const Grid1D grid(-20.0, 20.0, 256);
    ProblemSpec spec = symmetric_spec(2.0, 1.0, 2.0);
    spec.beta = 1.5;
    spec.lambda = 0.1;
    spec.f = InitialData::sampled_data(gaussian_samples(grid, 0.0, 1.0, 1.0));
    const SolutionField target = solve_theorem2(spec, 1.0, grid, 1e-10);
    record_run("F2 two-order", target);

    const reference::FDConfig cfg{.grid = grid,
                                  .nt = 512,
                                  .dt = 1.0 / 512.0,
                                  .alpha = 2.0,
                                  .beta = 1.5,
                                  .lambda = 0.1,
                                  .op = spec.op,
                                  .stability_limit = 1.0};
    reference::FDInitial init{spec.f, spec.g, spec.f2, spec.g2};
    const SolutionField fd = reference::gl_fd_solver(cfg, init, spec.source);

    double gap = 0.0;
    for (std::size_t i = 0; i < grid.n(); ++i)
        gap = std::max(gap, std::abs(fd.values[i] - target.values[i]));
    const double tol = 2e-2;
    r.passed = gap < tol;
    r.detail = fmt("max |FD - spectral| = %.3e (tolerance %.0e); "
                   "alpha=2, beta=1.5, lambda=0.1, nt=512", gap, tol);
    return finish(std::move(r), t0);
}

// ---------------------------------------------------------------------------
// A8: realness and mass balance of every recorded run, plus grid-doubling
// stability of the closed-form scenarios.
// ---------------------------------------------------------------------------
CheckResult invariants() {
    const auto t0 = clock_type::now();
    CheckResult r{"A8", "realness, mass balance, grid stability", false, "",
                  0.0};

    if (records().empty()) {
        r.detail = "no recorded runs; criterion must follow the others";
        return finish(std::move(r), t0);
    }

    double worst_imag = 0.0, worst_mass = 0.0;
    std::string offender;
    for (const InvariantRecord& rec : records()) {
        const double imag_rel = rec.imag_residual / std::max(rec.max_abs, 1e-300);
        const double mass_rel = rec.mass_gap / rec.mass_scale;
        if (imag_rel > worst_imag) worst_imag = imag_rel;
        if (mass_rel > worst_mass) {
            worst_mass = mass_rel;
            offender = rec.label;
        }
    }

    // Grid doubling: node values of the closed-form scenarios must be stable
    // under doubling the resolution (coarse node i lands on fine node 2i).
    auto doubling_gap = [](const ProblemSpec& spec, double x_min, double x_max,
                           std::size_t n, bool green_path, bool resample_g) {
        const Grid1D coarse(x_min, x_max, n);
        const Grid1D fine(x_min, x_max, 2 * n);
        ProblemSpec sc = spec;
        ProblemSpec sf = spec;
        if (resample_g) {
            sc.g = InitialData::sampled_data(gaussian_samples(coarse, 0.0, 1.0, 1.0));
            sf.g = InitialData::sampled_data(gaussian_samples(fine, 0.0, 1.0, 1.0));
        }
        const SolutionField a = green_path ? solve_corollary2(sc, 1.0, coarse, 1e-10)
                                           : solve_theorem1(sc, 1.0, coarse, 1e-10);
        const SolutionField b = green_path ? solve_corollary2(sf, 1.0, fine, 1e-10)
                                           : solve_theorem1(sf, 1.0, fine, 1e-10);
        double gap = 0.0;
        for (std::size_t i = 0; i < coarse.n(); ++i)
            gap = std::max(gap, std::abs(a.values[i] - b.values[2 * i]));
        return gap;
    };

    ProblemSpec heat = symmetric_spec(1.0, 1.0, 2.0);
    heat.f = InitialData::delta_data();
    const double gap_heat = doubling_gap(heat, -30.0, 30.0, 2048, true, false);

    ProblemSpec wave = symmetric_spec(2.0, 1.0, 2.0);
    const double gap_wave = doubling_gap(wave, -20.0, 20.0, 1024, false, true);

    ProblemSpec cauchy = symmetric_spec(1.0, 1.0, 1.0);
    cauchy.f = InitialData::delta_data();
    const double gap_cauchy =
        doubling_gap(cauchy, -1000.0, 1000.0, 32768, true, false);

    const double inv_tol = 1e-6;
    const double worst_doubling = std::max({gap_heat, gap_wave, gap_cauchy});
    r.passed = worst_imag < inv_tol && worst_mass < inv_tol &&
               worst_doubling < inv_tol;
    r.detail = fmt("%zu runs: worst imag residual %.3e, worst mass gap %.3e%s%s; "
                   "doubling gaps %.3e/%.3e/%.3e (all vs %.0e)",
                   records().size(), worst_imag, worst_mass,
                   offender.empty() ? "" : " at ",
                   offender.c_str(), gap_heat, gap_wave, gap_cauchy, inv_tol);
    return finish(std::move(r), t0);
}

// ---------------------------------------------------------------------------
// Kernel reduction properties (suite-only companion to A6).
// ---------------------------------------------------------------------------
CheckResult kernel_props() {
    const auto t0 = clock_type::now();
    CheckResult r{"K1", "kernel closed forms and exact reductions", false, "",
                  0.0};

    double worst = 0.0;
    std::string worst_what = "-";
    auto track = [&](double gap, const char* what) {
        if (gap > worst) {
            worst = gap;
            worst_what = what;
        }
    };

    // lambda = 0 must short-circuit bit for bit.
    Rng rng(0x4e27e15bull);
    bool bitwise = true;
    for (int i = 0; i < 8; ++i) {
        const double alpha = rng.unif(1.05, 2.0);
        const double beta = rng.unif(1.05, alpha - 1e-3);
        const double rho = rng.coin() ? 1.0 : 2.0;
        const cplx b(rng.unif(0.0, 50.0), rng.unif(-5.0, 5.0));
        const double t = rng.unif(0.1, 3.0);
        const cplx two = kernel_two_term(alpha, beta, 0.0, rho, b, t, 1e-10);
        const cplx one = kernel_single(alpha, rho, b, t, 1e-10);
        if (two != one) bitwise = false;
    }

    // Closed forms at the classical orders.
    for (const double b : {0.5, 2.0, 9.0}) {
        for (const double t : {0.3, 1.0, 2.5}) {
            const double rb = std::sqrt(b);
            const cplx k1 = kernel_single(2.0, 1.0, cplx(b, 0.0), t, 1e-12);
            track(std::abs(k1 - std::sin(rb * t) / rb), "sin/sqrt(b) at alpha=2");
            const cplx k2 = kernel_single(2.0, 2.0, cplx(b, 0.0), t, 1e-12);
            track(std::abs(k2 - std::cos(rb * t)), "cos at alpha=2");
            const cplx k3 = kernel_single(1.0, 1.0, cplx(b, 0.0), t, 1e-12);
            track(std::abs(k3 - std::exp(-b * t)), "exp at alpha=1");
        }
    }

    // b = 0 collapses to the power kernel.
    for (const double alpha : {1.2, 1.7, 2.0}) {
        const cplx k = kernel_single(alpha, 1.0, cplx(0.0, 0.0), 0.8, 1e-12);
        const double truth = std::pow(0.8, alpha - 1.0) / std::tgamma(alpha);
        track(std::abs(k - truth), "power kernel at b=0");
    }

    // Frozen two-order values (50-digit series, rounded to double).
    {
        const cplx v1 = kernel_two_term(2.0, 1.5, 0.1, 1.0, cplx(1.0, 0.0), 1.0,
                                        1e-12);
        track(std::abs(v1 - cplx(0.7860394255495517803026320426177774654881, 0.0)),
              "frozen two-order value 1");
        const cplx v2 = kernel_two_term(1.5, 1.2, 0.05, 2.0, cplx(0.0, 0.0), 1.0,
                                        1e-12);
        track(std::abs(v2 - cplx(0.5237362713273034727678962266017874923289, 0.0)),
              "frozen two-order value 2");
    }

    const double tol = 5e-12;
    r.passed = bitwise && worst < tol;
    r.detail = fmt("lambda=0 reduction %s; worst closed-form gap %.3e "
                   "(tolerance %.0e) at %s",
                   bitwise ? "bitwise" : "NOT bitwise", worst, tol,
                   worst_what.c_str());
    return finish(std::move(r), t0);
}

}  // namespace

CheckResult check_heat_limit() { return heat_limit(); }
CheckResult check_dalembert_limit() { return dalembert_limit(); }
CheckResult check_cauchy_limit() { return cauchy_limit(); }
CheckResult check_mlf_conformance() { return mlf_conformance(); }
CheckResult check_sumudu_roundtrip() { return sumudu_roundtrip(); }
CheckResult check_reductions() { return reductions(); }
CheckResult check_fd_cross() { return fd_cross(); }
CheckResult check_invariants() { return invariants(); }

std::vector<CheckResult> run_acceptance() {
    records().clear();
    std::vector<CheckResult> out;
    out.push_back(heat_limit());
    out.push_back(dalembert_limit());
    out.push_back(cauchy_limit());
    out.push_back(mlf_conformance());
    out.push_back(sumudu_roundtrip());
    out.push_back(reductions());
    out.push_back(fd_cross());
    out.push_back(invariants());
    return out;
}

std::vector<std::string> suite_names() {
    return {"heat", "wave", "mlf", "sumudu", "kernels", "fd-cross"};
}

std::vector<CheckResult> run_suite(const std::string& name) {
    records().clear();
    std::vector<CheckResult> out;
    if (name == "heat") {
        out.push_back(heat_limit());
        out.push_back(cauchy_limit());
    } else if (name == "wave") {
        out.push_back(dalembert_limit());
    } else if (name == "mlf") {
        out.push_back(mlf_conformance());
    } else if (name == "sumudu") {
        out.push_back(sumudu_roundtrip());
    } else if (name == "kernels") {
        out.push_back(kernel_props());
        out.push_back(reductions());
    } else if (name == "fd-cross") {
        out.push_back(fd_cross());
        out.push_back(two_term_cross());
    } else {
        std::string all;
        for (const std::string& s : suite_names()) {
            if (!all.empty()) all += ", ";
            all += s;
        }
        throw ConfigError("unknown validation suite \"" + name +
                          "\" (expected one of: " + all + ")");
    }
    return out;
}

}
