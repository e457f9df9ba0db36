#pragma once

#include <cstdint>
#include <optional>

#include "fracvar/grid.hpp"
#include "fracvar/problem.hpp"

namespace fracvar {

// Nodes excluded from the Euler-Lagrange residual norm at each side: the
// end node (where the composed Riemann-Liouville derivative can be
// genuinely singular) plus the two interior nodes nearest to it.
inline constexpr int kElNormTrim = 3;

// True when node i participates in el_norm for residual samples r.
bool residual_node_admissible(const SampledFunction& r, int i);

// Verification of a candidate against the necessary optimality conditions.
struct ResidualReport {
    SampledFunction el_pointwise;
    double el_norm;
    std::optional<double> nbc_left;  // present iff the left end is free
    std::optional<double> nbc_right; // present iff the right end is free
};

// Pointwise residual of the Euler-Lagrange equation,
//   R = d2L + D_b^alpha[d3L] + D_a^beta[d4L],
// at the candidate y. The d3L / d4L node sequences are formed first and the
// Riemann-Liouville derivative operators applied to them; end nodes carry
// the singular flag of those operators.
SampledFunction euler_lagrange_residual(const Problem& p, const SampledFunction& y);

// Max-abs of the residual over admissible nodes (trimmed, flag-aware).
// Vacuously 0 when n is too small to leave any admissible node.
double euler_lagrange_norm(const SampledFunction& el_pointwise);

// Residual of the natural boundary condition at the free left end:
//   |int d5L dx - [I_b^(1-alpha) d3L - I_a^(1-beta) d4L] at x = a|.
// UsageError when the left end is fixed.
double natural_bc_left_residual(const Problem& p, const SampledFunction& y);

// Mirror condition at the free right end:
//   |int d6L dx - [I_a^(1-beta) d4L - I_b^(1-alpha) d3L] at x = b|.
double natural_bc_right_residual(const Problem& p, const SampledFunction& y);

// Full report: pointwise residual, trimmed norm, and the natural-condition
// residuals for whichever ends are free.
ResidualReport residual_report(const Problem& p, const SampledFunction& y);

struct ConvexityProbeReport {
    bool all_nonneg;
    double min_gap; // +infinity when no trials ran
};

// Sampled sufficiency probe: draws `trials` smooth random perturbations h
// (seeded polynomial combinations scaled to `magnitude`, zeroed at fixed
// ends) and reports the minimum of J(y0+h) - J(y0). all_nonneg holds when
// every gap clears -1e-9 * max(1, |J(y0)|). A negative gap is a finding
// about y0, not an error.
ConvexityProbeReport convexity_probe(const Problem& p, const SampledFunction& y0, int trials,
                                     double magnitude, std::uint64_t seed = 0x5eed);

// Residual report specialized to integrands that do not depend on the end
// values (d5L = d6L = 0 identically): checks that precondition by sampling,
// asserts the integral terms vanish, and reduces the natural conditions to
// the bare bracket differences. UsageError when a nonzero d5L/d6L shows up.
ResidualReport verify_against_corollary_agrawal(const Problem& p, const SampledFunction& y);

} // namespace fracvar
