#pragma once

#include <string>
#include <vector>

#include "fracgreen/grid.hpp"
#include "fracgreen/problem.hpp"

namespace fracgreen {

/// Solution path selector. theorem1: single order, asymmetric operator
/// allowed; corollary1: single order, symmetric operator; corollary2:
/// sub-first-order Green function with delta datum; theorem2: two time
/// orders.
enum class SolveMode { theorem1, corollary1, corollary2, theorem2 };

const char* to_string(SolveMode mode);

/// One fully validated run request: problem, grid, output times, tolerance,
/// and destination directory.
struct RunConfig {
    SolveMode mode = SolveMode::theorem1;
    ProblemSpec problem;
    Grid1D grid{-40.0, 40.0, 2048};
    std::vector<double> times;
    double tol = 1e-10;
    int r_max = 64;
    std::string output_path = "out";

    // Canonical dump of the parsed config document; embedded in the manifest
    // so the exact input (shape parameters included) travels with the output.
    std::string config_echo;
};

/// Parse a JSON config document. Initial-data and source profiles given as
/// named shapes (gaussian, delta, zero, samples) are resolved to grid samples
/// here. Throws ConfigError with the offending field named.
RunConfig parse_config(const std::string& json_text);

/// Load and parse a config file (ConfigError on I/O failure).
RunConfig load_config(const std::string& path);

/// Enforce every mode-specific parameter constraint (order ranges, operator
/// bounds, data shapes, grid and tolerance limits). Throws ConfigError whose
/// message names the violated constraint, e.g.
/// "constraint violated: |theta| <= min(gamma, 2-gamma)".
void validate_config(const RunConfig& config);

/// Serialized echo of every knob that affects the output, plus the library
/// version; written next to the CSVs as manifest.json.
std::string manifest_json(const RunConfig& config,
                          const std::vector<std::string>& outputs,
                          const std::vector<double>& imag_residuals,
                          int threads_used);

}
