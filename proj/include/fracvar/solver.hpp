#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracvar/grid.hpp"
#include "fracvar/problem.hpp"

namespace fracvar {

struct SolveOptions {
    int max_iters = 5000;
    double grad_tol = 1e-8; // infinity norm of the discrete gradient
    double step_init = 1.0;
    double armijo_c = 1e-4;
    double backtrack_factor = 0.5;
    std::uint64_t seed = 0; // perturbs the initial guess
};

struct SolveReport {
    SampledFunction minimizer;
    double j_value;
    double grad_norm;
    double el_residual_norm;
    std::optional<double> nbc_left_residual;  // present iff the left end is free
    std::optional<double> nbc_right_residual; // present iff the right end is free
    int iterations;
    bool converged;
};

// Exact gradient of the discretized functional with respect to the node
// values: quadrature-weighted partials pushed back through the transposed
// Caputo operator matrices, with end-value terms landing on the end nodes.
// Entries at fixed boundary nodes are zeroed.
std::vector<double> discrete_gradient(const Problem& p, const SampledFunction& y);

// Starting point of the direct method: the affine interpolant of the known
// end values (a constant when one or both ends are free, at the 0.5*(a+b)
// level when both are), plus a small seeded polynomial perturbation that
// leaves fixed nodes untouched.
SampledFunction initial_guess(const Problem& p, std::uint64_t seed);

// Direct method: monotone line-search minimization of the discretized
// functional over the node values, free end values included. Directions are
// L-BFGS (falling back to steepest descent when curvature information is
// unusable) with Armijo backtracking, so every accepted step decreases the
// functional. Line-search breakdown yields converged = false rather than an
// exception. Residual fields are filled via the residuals module.
SolveReport solve_direct(const Problem& p, const SolveOptions& opts = {});

struct ConvergenceRow {
    int n;
    double j_value;
    double el_norm;
    std::optional<double> nbc_left;
    std::optional<double> nbc_right;
    bool converged;
    SampledFunction minimizer;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    // Non-increase (with 10% slack) across consecutive converged rows;
    // comparisons involving non-converged rows are skipped.
    bool el_monotone = true;
    bool nbc_left_monotone = true;
    bool nbc_right_monotone = true;
};

// One solve per grid size for a registry problem, in the given order
// (coarsest first). The params map must omit "n"; each row supplies it.
ConvergenceTable convergence_study(const std::string& name,
                                   const std::map<std::string, double>& params,
                                   const std::vector<int>& grid_sizes,
                                   const SolveOptions& opts = {});

} // namespace fracvar
