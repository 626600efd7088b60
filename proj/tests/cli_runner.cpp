// End-to-end harness for the command line driver. Takes the binary path as
// argv[1], runs it through its subcommands, and checks exit codes, output
// text, and the byte-level determinism of solution files across thread
// counts. Plain main instead of doctest so the child processes and scratch
// directories stay easy to reason about.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int checks = 0;
int failures = 0;
std::string scratch;
int run_counter = 0;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& cmd) {
    const std::string capture =
        scratch + "/cmd_" + std::to_string(run_counter++) + ".txt";
    const int rc = std::system((cmd + " > " + capture + " 2>&1").c_str());
    RunResult r;
    if (rc != -1 && WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
    std::ifstream in(capture);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.out = buf.str();
    return r;
}

void expect(bool ok, const std::string& label, const std::string& detail = "") {
    ++checks;
    if (ok) {
        std::printf("ok - %s\n", label.c_str());
    } else {
        ++failures;
        std::printf("FAIL - %s\n", label.c_str());
        if (!detail.empty()) std::printf("      %s\n", detail.c_str());
    }
}

void expect_code(const RunResult& r, int want, const std::string& label) {
    expect(r.code == want,
           label + " (exit " + std::to_string(want) + ")",
           "got exit " + std::to_string(r.code) + "\n      output: " + r.out);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string solve_config(const std::string& out_dir) {
    return std::string("{\n")
        + "  \"mode\": \"theorem1\",\n"
        + "  \"alpha\": 1.8,\n"
        + "  \"operator\": {\"terms\": [{\"mu\": 1.0, \"gamma\": 2.0, \"theta\": 0.0}]},\n"
        + "  \"grid\": {\"x_min\": -20.0, \"x_max\": 20.0, \"n\": 128},\n"
        + "  \"times\": [0.5],\n"
        + "  \"f\": {\"shape\": \"gaussian\", \"center\": 0.0, \"width\": 1.0, \"amplitude\": 1.0},\n"
        + "  \"output_path\": \"" + out_dir + "\"\n"
        + "}\n";
}

}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <path-to-binary>\n");
        return 2;
    }
    const std::string bin = argv[1];

    char tmpl[] = "/tmp/fracgreen_cli_XXXXXX";
    char* dir = mkdtemp(tmpl);
    if (dir == nullptr) {
        std::fprintf(stderr, "cannot create scratch directory\n");
        return 2;
    }
    scratch = dir;

    // bad invocations: no subcommand, unknown flags
    expect_code(run(bin), 2, "no subcommand is an input error");
    expect_code(run(bin + " --frobnicate"), 2, "unknown flag is an input error");
    expect_code(run(bin + " --help"), 0, "help exits cleanly");

    // direct evaluator access
    {
        const RunResult r = run(bin + " mlf --alpha 1 --re 1");
        expect_code(r, 0, "evaluator happy path");
        expect(r.out.find("2.718281828459045") != std::string::npos,
               "evaluator prints the exponential", r.out);
    }
    expect_code(run(bin + " mlf --alpha 1.5 --re 60"), 3,
                "growing arguments are a numerical error");
    expect_code(run(bin + " mlf --alpha 1.4 --beta 1 --delta 40 --re=-20"), 3,
                "uncertifiable points are a numerical error");
    expect_code(run(bin + " mlf --re 1"), 2, "missing required flag");

    // validation suites
    {
        const RunResult r = run(bin + " validate bogus");
        expect_code(r, 2, "unknown suite is an input error");
        expect(r.out.find("unknown validation suite") != std::string::npos,
               "unknown suite is named", r.out);
    }
    {
        const RunResult r = run(bin + " validate kernels");
        expect_code(r, 0, "kernel suite passes");
        expect(r.out.find("PASS") != std::string::npos, "suite lines say PASS", r.out);
        expect(r.out.find("suite kernels: PASS") != std::string::npos,
               "suite summary present", r.out);
    }

    // solve: config errors
    expect_code(run(bin + " solve " + scratch + "/missing.json"), 2,
                "missing config file is an input error");
    {
        const std::string bad = scratch + "/bad.json";
        std::ofstream(bad) << "{\"mode\": \"theorem1\", \"bogus_field\": 1}";
        const RunResult r = run(bin + " solve " + bad);
        expect_code(r, 2, "unknown config field is an input error");
        expect(r.out.find("bogus_field") != std::string::npos,
               "offending field is named", r.out);
    }

    // solve: happy path, deterministic across thread counts
    {
        const std::string cfg1 = scratch + "/run1.json";
        const std::string cfg2 = scratch + "/run2.json";
        std::ofstream(cfg1) << solve_config(scratch + "/out1");
        std::ofstream(cfg2) << solve_config(scratch + "/out2");

        const RunResult r1 = run("FRACGREEN_THREADS=1 " + bin + " solve " + cfg1);
        expect_code(r1, 0, "solve succeeds single-threaded");
        expect(r1.out.find("wrote") != std::string::npos, "solve reports outputs", r1.out);

        const RunResult r2 = run("FRACGREEN_THREADS=7 " + bin + " solve " + cfg2);
        expect_code(r2, 0, "solve succeeds multi-threaded");

        const fs::path csv1 = fs::path(scratch) / "out1" / "N_000.csv";
        const fs::path csv2 = fs::path(scratch) / "out2" / "N_000.csv";
        expect(fs::exists(csv1) && fs::exists(csv2), "solution files exist");
        expect(fs::exists(fs::path(scratch) / "out1" / "manifest.json"),
               "manifest exists");
        const std::string b1 = read_file(csv1);
        const std::string b2 = read_file(csv2);
        expect(!b1.empty() && b1 == b2,
               "solution bytes are identical across thread counts");
        expect(b1.rfind("x,N,imag_residual\n", 0) == 0, "solution header is stable");
    }

    std::printf("%d checks, %d failures\n", checks, failures);
    fs::remove_all(scratch);
    return failures == 0 ? 0 : 1;
}
