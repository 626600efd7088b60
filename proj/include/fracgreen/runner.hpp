#pragma once

#include <iosfwd>
#include <string>

#include "fracgreen/config.hpp"
#include "fracgreen/fields.hpp"

namespace fracgreen {

/// Execute a validated run: one solve per output time, one CSV per solve
/// (header `x,N,imag_residual`, 17 significant digits, LF endings), plus
/// manifest.json, all under config.output_path. Returns the manifest path.
/// Output is byte-identical across repeat runs and thread counts.
std::string run_solve(const RunConfig& config, std::ostream& log);

/// CSV serialization used by run_solve, exposed for tests.
std::string solution_to_csv(const SolutionField& solution);

/// Number of worker threads the solver will use, honoring FRACGREEN_THREADS
/// (unset or 0 means automatic).
int effective_thread_count();

}
