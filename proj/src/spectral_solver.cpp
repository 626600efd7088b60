#include <fracgreen/spectral_solver.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fracgreen/errors.hpp>
#include <fracgreen/fft.hpp>
#include <fracgreen/kernels.hpp>
#include <fracgreen/mlf.hpp>
#include <fracgreen/quadrature.hpp>
#include <fracgreen/runner.hpp>
#include <fracgreen/symbol.hpp>

namespace fracgreen {

namespace {

using cplx = std::complex<double>;

constexpr double kRoot2Pi = 2.5066282746310005024157652848110;

// Static contiguous chunks: the partition depends only on n and the thread
// count, each index writes its own slot, and no reductions cross threads, so
// results are bit-identical for any thread count. The lowest-index chunk's
// exception is the one rethrown.
template <typename Body>
void parallel_for(std::size_t n, const Body& body) {
    const int want = effective_thread_count();
    if (want <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(want), n);
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// Transformed source phi*(k, tau), built once per solve so the spatial
// transforms are shared across wavenumbers.
struct TransformedSource {
    SourceTerm::Kind kind = SourceTerm::Kind::none;
    SpectralField spatial_hat{Grid1D(0.0, 1.0, 8), {}};
    std::function<double(double)> profile;
    std::vector<double> mesh;
    std::vector<SpectralField> slice_hats;

    bool is_none() const { return kind == SourceTerm::Kind::none; }

    cplx at(std::size_t ki, double tau) const {
        switch (kind) {
            case SourceTerm::Kind::none:
                return {0.0, 0.0};
            case SourceTerm::Kind::separable:
                return spatial_hat.values[ki] * profile(tau);
            case SourceTerm::Kind::sampled: {
                if (tau <= mesh.front()) return slice_hats.front().values[ki];
                if (tau >= mesh.back()) return slice_hats.back().values[ki];
                const auto it =
                    std::upper_bound(mesh.begin(), mesh.end(), tau);
                const std::size_t hi =
                    static_cast<std::size_t>(it - mesh.begin());
                const std::size_t lo = hi - 1;
                const double w = (tau - mesh[lo]) / (mesh[hi] - mesh[lo]);
                return (1.0 - w) * slice_hats[lo].values[ki] +
                       w * slice_hats[hi].values[ki];
            }
        }
        return {0.0, 0.0};
    }
};

TransformedSource build_source(const SourceTerm& src, const Grid1D& grid,
                               double t_final) {
    TransformedSource out;
    out.kind = src.kind;
    switch (src.kind) {
        case SourceTerm::Kind::none:
            break;
        case SourceTerm::Kind::separable:
            if (!src.time_profile)
                throw DomainError("separable source lacks a time profile");
            out.spatial_hat = forward_transform(
                InitialData::sampled_data(src.spatial), grid);
            out.profile = src.time_profile;
            break;
        case SourceTerm::Kind::sampled: {
            if (src.time_mesh.empty() ||
                src.slices.size() != src.time_mesh.size())
                throw DomainError(
                    "sampled source needs one slice per mesh time");
            for (std::size_t i = 0; i + 1 < src.time_mesh.size(); ++i)
                if (!(src.time_mesh[i] < src.time_mesh[i + 1]))
                    throw DomainError(
                        "sampled source mesh must be strictly increasing");
            if (src.time_mesh.front() > 1e-12 ||
                src.time_mesh.back() < t_final * (1.0 - 1e-12))
                throw DomainError(
                    "sampled source mesh must cover [0, t]");
            out.mesh = src.time_mesh;
            out.slice_hats.reserve(src.slices.size());
            for (const auto& s : src.slices)
                out.slice_hats.push_back(
                    forward_transform(InitialData::sampled_data(s), grid));
            break;
        }
    }
    return out;
}

// Shared solve configuration for the per-wavenumber kernel assembly.
struct ModeProblem {
    double alpha = 1.5;
    double beta = 0.0;
    double lambda = 0.0;
    double t = 1.0;
    double tol = 1e-10;
    int r_max = 64;
    bool use_sigma = false;  // route the symbol through sigma_of_k
};

cplx symbol_at(const ModeProblem& mp, const SpaceOperator& op, double k) {
    if (mp.use_sigma) return {sigma_of_k(op, k), 0.0};
    return b_of_k(op, k);
}

// Time convolution of the transformed source with the propagation kernel at
// one wavenumber. The substitution xi = t s^{1/alpha} turns the integral into
//   (t^alpha / alpha) int_0^1 phi*(k, t - xi(s)) M(s) ds,
// where M(s) = E_{alpha,alpha}(-b t^alpha s) for the single-order kernel and
// the xi^{1-alpha}-scaled two-relaxation kernel otherwise; the endpoint
// weight xi^{alpha-1} is absorbed exactly.
cplx source_convolution_impl(const ModeProblem& mp, const cplx& b,
                             const TransformedSource& src, std::size_t ki) {
    const double a = mp.alpha;
    const double t = mp.t;
    const cplx zb = -b * std::pow(t, a);

    const auto integrand = [&](double s) -> cplx {
        const double xi = t * std::pow(s, 1.0 / a);
        cplx m;
        if (mp.lambda == 0.0) {
            MLArgs args;
            args.alpha = a;
            args.beta = a;
            args.delta = 1.0;
            args.z = zb * s;
            m = mlf_eval(args, std::clamp(mp.tol, 1e-12, 1e-3)).value;
        } else {
            m = kernel_two_term(a, mp.beta, mp.lambda, 1.0, b, xi, mp.tol,
                                mp.r_max) *
                std::pow(xi, 1.0 - a);
        }
        return src.at(ki, t - xi) * m;
    };

    const QuadRule& rule = gauss_legendre(64);
    const double pref = std::pow(t, a) / a;
    cplx prev{0.0, 0.0};
    bool have_prev = false;
    double last_diff = 0.0;
    for (int panels = 1; panels <= 64; panels *= 2) {
        cplx acc{0.0, 0.0};
        const double h = 1.0 / static_cast<double>(panels);
        for (int p = 0; p < panels; ++p) {
            const double lo = h * static_cast<double>(p);
            for (std::size_t q = 0; q < rule.x.size(); ++q) {
                const double s = lo + 0.5 * h * (rule.x[q] + 1.0);
                acc += rule.w[q] * integrand(s);
            }
        }
        acc *= 0.5 * h * pref;
        if (have_prev) {
            last_diff = std::abs(acc - prev);
            if (last_diff <= mp.tol * std::max(1.0, std::abs(acc)))
                return acc;
        }
        prev = acc;
        have_prev = true;
    }
    std::ostringstream os;
    os << "source_convolution: panel doubling stalled at change " << last_diff
       << " for tolerance " << mp.tol;
    throw QuadratureFailure(os.str());
}

SolutionField synthesize(const Grid1D& grid, std::vector<cplx> nstar,
                         double t) {
    const std::size_t n = grid.n();
    const cplx zero_mode = nstar[0];
    for (std::size_t i = 0; i < n; ++i)
        nstar[i] *= std::polar(1.0, -grid.k(i) * grid.x_min());
    fft_radix2(nstar, -1);
    const double scale = grid.dk() / kRoot2Pi;

    SolutionField out{grid, t, std::vector<double>(n), 0.0, zero_mode};
    double max_abs = 0.0;
    double max_imag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx v = nstar[i] * scale;
        out.values[i] = v.real();
        max_abs = std::max(max_abs, std::abs(v.real()));
        max_imag = std::max(max_imag, std::abs(v.imag()));
    }
    out.max_imag_residual = max_imag;
    if (max_imag > 1e-6 * max_abs + 1e-300) {
        std::ostringstream os;
        os << "synthesis produced imaginary residual " << max_imag
           << " against peak " << max_abs
           << "; the transformed data are not conjugate-symmetric";
        throw RealnessViolation(os.str());
    }
    return out;
}

void check_solve_common(const ProblemSpec& spec, double t, double tol) {
    validate_operator(spec.op);
    if (!(t > 0.0) || !std::isfinite(t))
        throw DomainError("constraint violated: t > 0");
    if (!(tol > 0.0) || !(tol <= 1e-2))
        throw DomainError("constraint violated: 0 < tol <= 1e-2");
}

// Kernel evaluations below target an absolute tolerance per mode; the
// synthesis then sums n of them scaled by dk/sqrt(2 pi), which is bounded by
// one for the grids in play, so the mode tolerance is passed through as-is.
SolutionField solve_single_path(const ProblemSpec& spec, double t,
                                const Grid1D& grid, double tol,
                                bool use_sigma) {
    check_solve_common(spec, t, tol);
    if (spec.lambda != 0.0)
        throw DomainError("constraint violated: lambda = 0 on the "
                          "single-order path");

    ModeProblem mp;
    mp.alpha = spec.alpha;
    mp.t = t;
    mp.tol = tol;
    mp.use_sigma = use_sigma;

    const SpectralField fhat = forward_transform(spec.f, grid);
    const SpectralField ghat = forward_transform(spec.g, grid);
    const TransformedSource src = build_source(spec.source, grid, t);
    const bool has_f = !spec.f.is_zero();
    const bool has_g = !spec.g.is_zero();

    const std::size_t n = grid.n();
    std::vector<cplx> nstar(n, cplx{0.0, 0.0});
    parallel_for(n, [&](std::size_t i) {
        const cplx b = symbol_at(mp, spec.op, grid.k(i));
        cplx acc{0.0, 0.0};
        if (has_f)
            acc += kernel_single(mp.alpha, 1.0, b, t, tol) * fhat.values[i];
        if (has_g)
            acc += kernel_single(mp.alpha, 2.0, b, t, tol) * ghat.values[i];
        if (!src.is_none()) acc += source_convolution_impl(mp, b, src, i);
        if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag())) {
            std::ostringstream os;
            os << "mode assembly produced a non-finite value at k = "
               << grid.k(i);
            throw NonConvergence(os.str());
        }
        nstar[i] = acc;
    });
    return synthesize(grid, std::move(nstar), t);
}

} // namespace

SpectralField forward_transform(const InitialData& data, const Grid1D& grid) {
    const std::size_t n = grid.n();
    SpectralField out{grid, std::vector<cplx>(n, cplx{0.0, 0.0})};
    switch (data.kind) {
        case InitialData::Kind::zero:
            break;
        case InitialData::Kind::delta: {
            const cplx c{1.0 / kRoot2Pi, 0.0};
            std::fill(out.values.begin(), out.values.end(), c);
            break;
        }
        case InitialData::Kind::sampled: {
            if (data.samples.size() != n) {
                std::ostringstream os;
                os << "forward_transform: sampled datum has "
                   << data.samples.size() << " values but the grid has " << n;
                throw DomainError(os.str());
            }
            double peak = 0.0;
            for (double v : data.samples)
                peak = std::max(peak, std::abs(v));
            const double edge = std::max(std::abs(data.samples.front()),
                                         std::abs(data.samples.back()));
            if (edge >= 1e-8 * peak && peak > 0.0) {
                std::ostringstream os;
                os << "constraint violated: sampled data must decay at the "
                      "grid edges (max|edge| < 1e-8 max|values|), got edge "
                   << edge << " against peak " << peak;
                throw EdgeDecayViolation(os.str());
            }
            for (std::size_t i = 0; i < n; ++i)
                out.values[i] = cplx(data.samples[i], 0.0);
            fft_radix2(out.values, +1);
            const double scale = grid.dx() / kRoot2Pi;
            for (std::size_t i = 0; i < n; ++i)
                out.values[i] *=
                    scale * std::polar(1.0, grid.k(i) * grid.x_min());
            break;
        }
    }
    return out;
}

SolutionField solve_theorem1(const ProblemSpec& spec, double t,
                             const Grid1D& grid, double tol) {
    if (!(spec.alpha > 1.0 && spec.alpha <= 2.0))
        throw DomainError("constraint violated: 1 < alpha <= 2");
    return solve_single_path(spec, t, grid, tol, /*use_sigma=*/false);
}

SolutionField solve_corollary1(const ProblemSpec& spec, double t,
                               const Grid1D& grid, double tol) {
    if (!(spec.alpha > 1.0 && spec.alpha <= 2.0))
        throw DomainError("constraint violated: 1 < alpha <= 2");
    for (const auto& term : spec.op.terms)
        if (term.theta != 0.0)
            throw ThetaNotZero(
                "solve_corollary1 requires every theta = 0");
    return solve_single_path(spec, t, grid, tol, /*use_sigma=*/true);
}

SolutionField solve_corollary2(const ProblemSpec& spec, double t,
                               const Grid1D& grid, double tol) {
    if (!(spec.alpha > 0.0 && spec.alpha <= 1.0))
        throw DomainError("constraint violated: 0 < alpha <= 1");
    if (spec.f.kind != InitialData::Kind::delta)
        throw DomainError(
            "constraint violated: the Green-function path needs f = delta");
    if (!spec.g.is_zero())
        throw DomainError("constraint violated: g = 0 when alpha <= 1");
    return solve_single_path(spec, t, grid, tol, /*use_sigma=*/false);
}

SolutionField solve_theorem2(const ProblemSpec& spec, double t,
                             const Grid1D& grid, double tol, int r_max) {
    check_solve_common(spec, t, tol);
    if (!(spec.alpha > 1.0 && spec.alpha <= 2.0))
        throw DomainError("constraint violated: 1 < alpha <= 2");
    if (spec.lambda != 0.0) {
        if (!std::isfinite(spec.lambda))
            throw DomainError("constraint violated: finite lambda");
        if (!(spec.beta > 1.0 && spec.beta <= 2.0))
            throw DomainError("constraint violated: 1 < beta <= 2");
    }
    if (r_max < 1) throw DomainError("constraint violated: r_max >= 1");

    ModeProblem mp;
    mp.alpha = spec.alpha;
    mp.beta = spec.beta;
    mp.lambda = spec.lambda;
    mp.t = t;
    mp.tol = tol;
    mp.r_max = r_max;

    const SpectralField fhat = forward_transform(spec.f, grid);
    const SpectralField ghat = forward_transform(spec.g, grid);
    const bool two = (spec.lambda != 0.0);
    const SpectralField f2hat =
        two ? forward_transform(spec.f2, grid) : SpectralField{grid, {}};
    const SpectralField g2hat =
        two ? forward_transform(spec.g2, grid) : SpectralField{grid, {}};
    const TransformedSource src = build_source(spec.source, grid, t);

    const bool has_f = !spec.f.is_zero() || (two && !spec.f2.is_zero());
    const bool has_g = !spec.g.is_zero() || (two && !spec.g2.is_zero());

    const std::size_t n = grid.n();
    std::vector<cplx> nstar(n, cplx{0.0, 0.0});
    parallel_for(n, [&](std::size_t i) {
        const cplx b = b_of_k(spec.op, grid.k(i));
        cplx acc{0.0, 0.0};
        try {
            if (has_f) {
                cplx fc = fhat.values[i];
                if (two) fc += spec.lambda * f2hat.values[i];
                acc += kernel_two_term(spec.alpha, spec.beta, spec.lambda,
                                       1.0, b, t, tol, r_max) *
                       fc;
            }
            if (has_g) {
                cplx gc = ghat.values[i];
                if (two) gc += spec.lambda * g2hat.values[i];
                acc += kernel_two_term(spec.alpha, spec.beta, spec.lambda,
                                       2.0, b, t, tol, r_max) *
                       gc;
            }
            if (!src.is_none()) acc += source_convolution_impl(mp, b, src, i);
        } catch (const SeriesDivergence& e) {
            std::ostringstream os;
            os << e.what() << " (at wavenumber k = " << grid.k(i) << ")";
            throw SeriesDivergence(os.str());
        }
        if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag())) {
            std::ostringstream os;
            os << "mode assembly produced a non-finite value at k = "
               << grid.k(i);
            throw NonConvergence(os.str());
        }
        nstar[i] = acc;
    });
    return synthesize(grid, std::move(nstar), t);
}

cplx source_convolution(const ProblemSpec& spec, const Grid1D& grid, double k,
                        double t, double tol) {
    check_solve_common(spec, t, tol);
    if (spec.source.is_none()) return {0.0, 0.0};

    // locate the grid wavenumber this k corresponds to
    std::size_t ki = grid.n();
    for (std::size_t i = 0; i < grid.n(); ++i) {
        if (std::abs(grid.k(i) - k) <= 1e-9 * std::max(1.0, grid.dk())) {
            ki = i;
            break;
        }
    }
    if (ki == grid.n())
        throw DomainError(
            "source_convolution: k must be one of the grid wavenumbers");

    ModeProblem mp;
    mp.alpha = spec.alpha;
    mp.beta = spec.beta;
    mp.lambda = spec.lambda;
    mp.t = t;
    mp.tol = tol;

    const TransformedSource src = build_source(spec.source, grid, t);
    return source_convolution_impl(mp, b_of_k(spec.op, k), src, ki);
}

} // namespace fracgreen
