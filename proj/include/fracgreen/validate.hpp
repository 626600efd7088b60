#pragma once

#include <string>
#include <vector>

namespace fracgreen::validate {

/// Outcome of one acceptance criterion or suite case.
struct CheckResult {
    std::string id;       // e.g. "A1"
    std::string title;    // short human description
    bool passed = false;
    std::string detail;   // measured numbers vs thresholds
    double seconds = 0.0;
};

// Acceptance criteria. Each runs its scenario end to end with pinned grids
// and tolerances and reports the measured margins. The invariant criterion
// (A8) re-checks realness and mass conservation collected from A1-A7 and the
// grid-doubling stability of the closed-form scenarios.
CheckResult check_heat_limit();        // A1
CheckResult check_dalembert_limit();   // A2
CheckResult check_cauchy_limit();      // A3
CheckResult check_mlf_conformance();   // A4
CheckResult check_sumudu_roundtrip();  // A5
CheckResult check_reductions();        // A6
CheckResult check_fd_cross();          // A7
CheckResult check_invariants();        // A8 (runs after the others)

/// All criteria in order A1..A8. A8 consumes invariant records the earlier
/// checks registered, so the order matters.
std::vector<CheckResult> run_acceptance();

/// Named suites for the command line: mlf, kernels, heat, wave, fd-cross,
/// sumudu. Returns the per-case results; unknown names throw ConfigError.
std::vector<CheckResult> run_suite(const std::string& name);

std::vector<std::string> suite_names();

}
