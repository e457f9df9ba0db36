// Command-line driver: configure a built-in problem, solve it (or run a
// grid-refinement study), and write machine-readable reports.
//
// Exit codes: 0 solved and converged, 1 configuration error, 2 solver did
// not converge. All diagnostics go to stderr; report files stay clean.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracvar/errors.hpp"
#include "fracvar/runner.hpp"
#include "fracvar/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"fracvar: direct solver for fractional variational problems "
                 "with free end-points"};
    app.set_version_flag("--version", fracvar::kVersion);

    std::string config_path;
    std::string problem;
    std::vector<std::string> sets;
    int n = -1;
    std::string out_dir;
    std::int64_t seed = -1;
    std::string grids_text;
    std::string reference;

    app.add_option("--config", config_path, "JSON config file (flat object)");
    app.add_option("--problem", problem, "registry problem name");
    app.add_option("--set", sets, "key=value override (repeatable)");
    app.add_option("--n", n, "number of grid intervals");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "seed for the initial-guess perturbation");
    app.add_option("--grids", grids_text, "comma-separated grid sizes; selects convergence mode");
    app.add_option("--reference", reference, "analytic reference for convergence mode");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        fracvar::RunConfig config;
        if (!config_path.empty()) {
            config = fracvar::load_config_file(config_path);
        }
        if (!problem.empty()) config.problem = problem;
        if (n >= 0) config.n = n;
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
        if (!grids_text.empty()) config.grids = fracvar::parse_grid_list(grids_text);
        if (!reference.empty()) config.reference = reference;
        for (const std::string& s : sets) {
            fracvar::apply_set_override(config, s);
        }

        if (!config.grids.empty()) {
            return fracvar::run_convergence(config, std::cerr);
        }
        return fracvar::run_solve(config, std::cerr);
    } catch (const fracvar::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
