#include <fracgreen/reference.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <fracgreen/errors.hpp>
#include <fracgreen/gamma.hpp>

namespace fracgreen::reference {

namespace {

// Centered-difference weights for the symmetric fractional derivative of
// order gamma: c0 = Gamma(gamma+1) / Gamma(gamma/2+1)^2 and
// c_{k+1} = c_k (k - gamma/2) / (k + gamma/2 + 1). Their symbol is
// |2 sin(theta/2)|^gamma, so at gamma = 2 they collapse to the classical
// three-point Laplacian stencil.
std::vector<double> centered_weights(double gamma, std::size_t n) {
    std::vector<double> c(n);
    const double half = 0.5 * gamma;
    c[0] = std::tgamma(gamma + 1.0) /
           (std::tgamma(half + 1.0) * std::tgamma(half + 1.0));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double kk = static_cast<double>(k);
        c[k + 1] = c[k] * (kk - half) / (kk + half + 1.0);
    }
    return c;
}

std::vector<double> sample_initial(const InitialData& d, const Grid1D& grid,
                                   const char* label) {
    const std::size_t n = grid.n();
    std::vector<double> out(n, 0.0);
    switch (d.kind) {
        case InitialData::Kind::zero:
            break;
        case InitialData::Kind::delta: {
            const double pos = (0.0 - grid.x_min()) / grid.dx();
            const long idx = std::lround(pos);
            if (idx < 0 || idx >= static_cast<long>(n)) {
                std::ostringstream os;
                os << "gl_fd_solver: delta datum for " << label
                   << " needs a grid containing x = 0";
                throw DomainError(os.str());
            }
            out[static_cast<std::size_t>(idx)] = 1.0 / grid.dx();
            break;
        }
        case InitialData::Kind::sampled: {
            if (d.samples.size() != n) {
                std::ostringstream os;
                os << "gl_fd_solver: sampled datum for " << label << " has "
                   << d.samples.size() << " values but the grid has " << n;
                throw DomainError(os.str());
            }
            out = d.samples;
            break;
        }
    }
    return out;
}

// Source samples at mesh time t, on the grid.
std::vector<double> sample_source(const SourceTerm& src, const Grid1D& grid,
                                  double t) {
    const std::size_t n = grid.n();
    std::vector<double> out(n, 0.0);
    switch (src.kind) {
        case SourceTerm::Kind::none:
            break;
        case SourceTerm::Kind::separable: {
            if (src.spatial.size() != n)
                throw DomainError(
                    "gl_fd_solver: separable source spatial profile is not "
                    "sampled on the solve grid");
            if (!src.time_profile)
                throw DomainError(
                    "gl_fd_solver: separable source lacks a time profile");
            const double w = src.time_profile(t);
            for (std::size_t i = 0; i < n; ++i) out[i] = src.spatial[i] * w;
            break;
        }
        case SourceTerm::Kind::sampled: {
            if (src.time_mesh.empty() ||
                src.slices.size() != src.time_mesh.size())
                throw DomainError(
                    "gl_fd_solver: sampled source needs one slice per mesh "
                    "time");
            for (const auto& s : src.slices)
                if (s.size() != n)
                    throw DomainError(
                        "gl_fd_solver: sampled source slice is not on the "
                        "solve grid");
            // clamp outside the mesh, interpolate linearly inside
            if (t <= src.time_mesh.front()) {
                out = src.slices.front();
                break;
            }
            if (t >= src.time_mesh.back()) {
                out = src.slices.back();
                break;
            }
            const auto it = std::upper_bound(src.time_mesh.begin(),
                                             src.time_mesh.end(), t);
            const std::size_t hi =
                static_cast<std::size_t>(it - src.time_mesh.begin());
            const std::size_t lo = hi - 1;
            const double span = src.time_mesh[hi] - src.time_mesh[lo];
            const double w = (t - src.time_mesh[lo]) / span;
            for (std::size_t i = 0; i < n; ++i)
                out[i] = (1.0 - w) * src.slices[lo][i] + w * src.slices[hi][i];
            break;
        }
    }
    return out;
}

} // namespace

SolutionField gl_fd_solver(const FDConfig& config, const FDInitial& init,
                           const SourceTerm& source) {
    const Grid1D& grid = config.grid;
    const std::size_t n = grid.n();
    const double dx = grid.dx();
    const double dt = config.dt;
    const double alpha = config.alpha;
    const double beta = config.beta;
    const double lambda = config.lambda;

    if (!(alpha > 0.0) || alpha > 2.0)
        throw DomainError("gl_fd_solver: alpha must lie in (0, 2]");
    if (config.nt < 1)
        throw DomainError("gl_fd_solver: nt must be at least 1");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw DomainError("gl_fd_solver: dt must be positive and finite");
    if (lambda != 0.0 && !(beta > 0.0 && beta < alpha))
        throw DomainError(
            "gl_fd_solver: lambda != 0 requires 0 < beta < alpha");
    validate_operator(config.op);
    for (const auto& term : config.op.terms)
        if (term.theta != 0.0)
            throw ThetaNotZero(
                "gl_fd_solver: only symmetric operators (theta = 0) are "
                "supported");
    if ((!init.g.is_zero() || !init.g2.is_zero()) && alpha != 2.0)
        throw DomainError(
            "gl_fd_solver: order alpha-2 data require alpha = 2");

    // Combined stencil of the full space operator and its sharp symbol bound.
    std::vector<double> stencil(n, 0.0);
    double sigma_max = 0.0;
    for (const auto& term : config.op.terms) {
        const std::vector<double> c = centered_weights(term.gamma, n);
        const double scale = term.mu * std::pow(dx, -term.gamma);
        for (std::size_t k = 0; k < n; ++k) stencil[k] += scale * c[k];
        sigma_max += scale * 2.0 * c[0];
    }
    const double load =
        std::pow(dt, alpha) * sigma_max +
        (lambda != 0.0 ? std::abs(lambda) * std::pow(dt, alpha - beta) : 0.0);
    if (load > config.stability_limit) {
        std::ostringstream os;
        os << "gl_fd_solver: explicit step outside the stability envelope: "
           << "dt^alpha sigma_max + |lambda| dt^(alpha-beta) = " << load
           << " exceeds " << config.stability_limit;
        throw StabilityViolation(os.str());
    }

    // Combined traces: the lower-order data ride along scaled by lambda.
    std::vector<double> F = sample_initial(init.f, grid, "f");
    std::vector<double> G = sample_initial(init.g, grid, "g");
    if (lambda != 0.0) {
        const std::vector<double> F2 = sample_initial(init.f2, grid, "f2");
        const std::vector<double> G2 = sample_initial(init.g2, grid, "g2");
        for (std::size_t i = 0; i < n; ++i) {
            F[i] += lambda * F2[i];
            G[i] += lambda * G2[i];
        }
    }

    // apply_L(v) = -sum_m stencil[|m|] v_{i+m}, zero beyond the edges
    const auto apply_L = [&](const std::vector<double>& v) {
        std::vector<double> out(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = stencil[0] * v[i];
            for (std::size_t m = 1; m < n; ++m) {
                double s = 0.0;
                if (i + m < n) s += v[i + m];
                if (i >= m) s += v[i - m];
                if (s != 0.0) acc += stencil[m] * s;
            }
            out[i] = -acc;
        }
        return out;
    };

    // Product-integration weights for the alpha and alpha-beta memory sums.
    const int nt = config.nt;
    std::vector<double> wA(static_cast<std::size_t>(nt) + 1, 0.0);
    std::vector<double> wB;
    {
        const double ga = reciprocal_gamma(alpha + 1.0) * std::pow(dt, alpha);
        for (int m = 1; m <= nt; ++m)
            wA[static_cast<std::size_t>(m)] =
                ga * (std::pow(static_cast<double>(m), alpha) -
                      std::pow(static_cast<double>(m - 1), alpha));
        if (lambda != 0.0) {
            wB.assign(static_cast<std::size_t>(nt) + 1, 0.0);
            const double ab = alpha - beta;
            const double gb = reciprocal_gamma(ab + 1.0) * std::pow(dt, ab);
            for (int m = 1; m <= nt; ++m)
                wB[static_cast<std::size_t>(m)] =
                    gb * (std::pow(static_cast<double>(m), ab) -
                          std::pow(static_cast<double>(m - 1), ab));
        }
    }

    // First-panel values by the panel average of the trace profile, which
    // keeps the quadrature meaningful when N itself is singular at t = 0.
    const double rga = reciprocal_gamma(alpha);
    const double rgam1 = reciprocal_gamma(alpha - 1.0);
    std::vector<double> avg0(n);
    {
        const double cf =
            std::pow(dt, alpha - 1.0) * reciprocal_gamma(alpha + 1.0);
        const double cg = std::pow(dt, alpha - 2.0) * rga;
        for (std::size_t i = 0; i < n; ++i) avg0[i] = cf * F[i] + cg * G[i];
    }

    std::vector<std::vector<double>> v_hist;
    v_hist.reserve(static_cast<std::size_t>(nt));
    std::vector<std::vector<double>> u_hist;
    if (lambda != 0.0) u_hist.reserve(static_cast<std::size_t>(nt));
    {
        std::vector<double> v0 = apply_L(avg0);
        const std::vector<double> phi0 = sample_source(source, grid, 0.0);
        for (std::size_t i = 0; i < n; ++i) v0[i] += phi0[i];
        v_hist.push_back(std::move(v0));
        if (lambda != 0.0) u_hist.push_back(avg0);
    }

    std::vector<double> N(n, 0.0);
    for (int step = 1; step <= nt; ++step) {
        const double t = static_cast<double>(step) * dt;
        const double cf = std::pow(t, alpha - 1.0) * rga;
        const double cg = std::pow(t, alpha - 2.0) * rgam1;
        for (std::size_t i = 0; i < n; ++i) N[i] = cf * F[i] + cg * G[i];
        for (int j = 0; j < step; ++j) {
            const double wa = wA[static_cast<std::size_t>(step - j)];
            const std::vector<double>& vj = v_hist[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < n; ++i) N[i] += wa * vj[i];
        }
        if (lambda != 0.0) {
            for (int j = 0; j < step; ++j) {
                const double wb =
                    lambda * wB[static_cast<std::size_t>(step - j)];
                const std::vector<double>& uj =
                    u_hist[static_cast<std::size_t>(j)];
                for (std::size_t i = 0; i < n; ++i) N[i] -= wb * uj[i];
            }
        }

        double peak = 0.0;
        for (double x : N) peak = std::max(peak, std::abs(x));
        if (!std::isfinite(peak)) {
            std::ostringstream os;
            os << "gl_fd_solver: non-finite values at step " << step;
            throw StabilityViolation(os.str());
        }

        if (step < nt) {
            std::vector<double> v = apply_L(N);
            const std::vector<double> phi = sample_source(source, grid, t);
            for (std::size_t i = 0; i < n; ++i) v[i] += phi[i];
            v_hist.push_back(std::move(v));
            if (lambda != 0.0) u_hist.push_back(N);
        }
    }

    SolutionField out{grid, static_cast<double>(nt) * dt, N, 0.0, {0.0, 0.0}};
    double total = 0.0;
    for (double x : N) total += x;
    out.zero_mode = {dx * total / std::sqrt(2.0 * M_PI), 0.0};
    return out;
}

} // namespace fracgreen::reference
