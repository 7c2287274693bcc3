#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "muhs/convergence.hpp"
#include "muhs/evolution.hpp"

namespace muhs::io {

enum class Command {
    simulate,
    kernel_check,
    characteristics,
    converge,
    energy_balance,
    invariants,
};

const char* to_string(Command c);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exit codes of the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitGuard = 3;
inline constexpr int kExitVerify = 4;

struct RunOptions {
    std::string config_path;
    std::string out_dir;      // overrides output.dir when nonempty
    int jobs = 0;             // 0: all available cores
    int seeds = 16;           // characteristics
    std::vector<int> ns = {8, 16, 32, 64};  // converge
    int mollify_n = 32;       // energy-balance
    int kernel_n = 256;       // kernel-check
};

struct ParsedConfig {
    SolverConfig solver;
    std::string initial_kind;  // "cosine" | "peakon" | "file"
    double a = 0.0, b = 0.0;   // cosine
    double p = 0.0, x0 = 0.0;  // peakon
    std::string file_path;     // file
    std::string out_dir;
    std::string config_hash;   // hex FNV-1a of the file bytes

    InitialCondition make_initial() const;
};

// Throws ConfigError naming the offending JSON path.
ParsedConfig parse_config(const std::string& path);

// Floats serialized with 17 significant digits.
std::string format_double(double v);

// Executes the command pipeline, writes outputs and manifest.json under the
// output directory, and returns the process exit code.
int run(Command cmd, const RunOptions& opts);

}  // namespace muhs::io
