#include <fracgreen/runner.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <fracgreen/errors.hpp>
#include <fracgreen/spectral_solver.hpp>

namespace fracgreen {

namespace {

SolutionField solve_one(const RunConfig& config, double t) {
    switch (config.mode) {
        case SolveMode::theorem1:
            return solve_theorem1(config.problem, t, config.grid, config.tol);
        case SolveMode::corollary1:
            return solve_corollary1(config.problem, t, config.grid,
                                    config.tol);
        case SolveMode::corollary2:
            return solve_corollary2(config.problem, t, config.grid,
                                    config.tol);
        case SolveMode::theorem2:
            return solve_theorem2(config.problem, t, config.grid, config.tol,
                                  config.r_max);
    }
    throw ConfigError("unknown solve mode");
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open \"" + path.string() +
                                "\" for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw ConfigError("write failed for \"" + path.string() + "\"");
}

} // namespace

std::string solution_to_csv(const SolutionField& solution) {
    std::string out = "x,N,imag_residual\n";
    out.reserve(out.size() + solution.values.size() * 64);
    const std::string imag = fmt17(solution.max_imag_residual);
    for (std::size_t i = 0; i < solution.values.size(); ++i) {
        out += fmt17(solution.grid.x(i));
        out += ',';
        out += fmt17(solution.values[i]);
        out += ',';
        out += imag;
        out += '\n';
    }
    return out;
}

std::string run_solve(const RunConfig& config, std::ostream& log) {
    validate_config(config);
    namespace fs = std::filesystem;
    try {
        fs::create_directories(config.output_path);
    } catch (const fs::filesystem_error& e) {
        throw ConfigError("cannot create output directory \"" +
                          config.output_path + "\": " + e.what());
    }

    std::vector<std::string> outputs;
    std::vector<double> residuals;
    outputs.reserve(config.times.size());
    for (std::size_t i = 0; i < config.times.size(); ++i) {
        const double t = config.times[i];
        SolutionField sol = solve_one(config, t);
        char name[32];
        std::snprintf(name, sizeof name, "N_%03zu.csv", i);
        const fs::path path = fs::path(config.output_path) / name;
        write_file(path, solution_to_csv(sol));
        outputs.emplace_back(name);
        residuals.push_back(sol.max_imag_residual);
        log << "wrote " << path.string() << " (t = " << fmt17(t)
            << ", imag residual " << sol.max_imag_residual << ")\n";
    }

    const fs::path manifest_path =
        fs::path(config.output_path) / "manifest.json";
    write_file(manifest_path, manifest_json(config, outputs, residuals,
                                            effective_thread_count()));
    log << "wrote " << manifest_path.string() << "\n";
    return manifest_path.string();
}

int effective_thread_count() {
    if (const char* env = std::getenv("FRACGREEN_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<int>(std::min(v, 256L));
        // 0 or anything unparsable falls through to automatic selection
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 256u));
}

}
