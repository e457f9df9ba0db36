#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracvar/solver.hpp"

namespace fracvar {

// Resolved run configuration. Sources, in increasing precedence: built-in
// defaults, a flat JSON config file, command-line flags.
struct RunConfig {
    std::string problem;
    std::map<std::string, double> params; // a, b, alpha, beta, gamma, lambda, ya, yb
    int n = 0;
    std::uint64_t seed = 0;
    std::string output_dir;
    std::vector<int> grids; // non-empty selects convergence mode

    std::optional<double> fix_left;  // boundary overrides on top of the registry
    std::optional<double> fix_right;
    bool free_left = false;
    bool free_right = false;

    SolveOptions solver;   // seed field is taken from `seed` above
    std::string reference; // "classical_ybar" fills max_dev_from_reference
};

// Parses the flat JSON config object; unknown keys raise ConfigError.
RunConfig load_config_file(const std::string& path);

// Applies one "key=value" override (the --set flag). Numeric keys cover the
// problem parameters, solver options and fixed-boundary overrides;
// free_left/free_right take 0/1; reference takes a string.
void apply_set_override(RunConfig& config, const std::string& spec);

// Parses a comma-separated grid-size list ("50,100,200").
std::vector<int> parse_grid_list(const std::string& text);

// Solves one problem and writes solution.csv + report.json into
// config.output_dir. Returns the process exit status: 0 converged,
// 1 configuration error (nothing written), 2 solver did not converge
// (files are still written). Diagnostics go to `diag` only.
int run_solve(const RunConfig& config, std::ostream& diag);

// Convergence mode: one solve per grid size, written to convergence.csv.
// Exit status as run_solve, with 2 when any row failed to converge.
int run_convergence(const RunConfig& config, std::ostream& diag);

} // namespace fracvar
