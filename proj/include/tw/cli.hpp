#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace tw::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2, kIo = 3 };

enum class Format { csv, json };

struct RunConfig {
    std::string command;  // tabulate | verify | sample-goe | sample-tasep
    double s_min = -8.0;
    double s_max = 8.0;
    double s_step = 0.5;
    int n_nodes = 80;
    std::uint64_t seed = 20050101;
    std::string output_path;  // empty: stdout
    Format format = Format::csv;

    std::size_t count = 1000;
    int dim = 200;
    double time = 64.0;
    int phase = 0;

    // verify only
    std::optional<std::vector<std::string>> checks;  // unset: every check
    double perturb_kernel = 0.0;                     // fault-injection hook
    double fd_step = 1e-4;
};

/// Grid s_min, s_min + step, ... <= s_max. A zero-width range is empty.
std::vector<double> grid(const RunConfig& config);

/// Each command renders its output into `out` and returns the exit code.
/// Library exceptions propagate; run() maps them to exit codes.
int cmd_tabulate(const RunConfig& config, std::string& out);
int cmd_verify(const RunConfig& config, std::string& out);
int cmd_sample_goe(const RunConfig& config, std::string& out);
int cmd_sample_tasep(const RunConfig& config, std::string& out);

/// Decimal with 12 significant digits, independent of the locale.
std::string format_number(double x);

/// Full command line entry point. Output goes to config.output_path or `out`;
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tw::cli
