#include "fracvar/residuals.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "fracvar/errors.hpp"
#include "fracvar/rng.hpp"

namespace fracvar {

bool residual_node_admissible(const SampledFunction& r, int i) {
    const int n = r.grid.n();
    if (i < kElNormTrim || i > n - kElNormTrim) return false;
    if (i == 0 && r.left_singular) return false;
    if (i == n && r.right_singular) return false;
    return true;
}

namespace {

// Node-wise data shared by every residual: the Caputo slopes and the
// partial-derivative sequences of the integrand along the candidate.
struct EvaluatedCandidate {
    SampledFunction z;
    SampledFunction t;

    EvaluatedCandidate(const Problem& p, const SampledFunction& y)
        : z(apply_operator(OperatorKind::LeftCFD, y, p.alpha)),
          t(apply_operator(OperatorKind::RightCFD, y, p.beta)) {}

    SampledFunction partial_sequence(const Problem& p, const SampledFunction& y, int k) const {
        const int n = p.grid.n();
        std::vector<double> v(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            const LagrangianArgs args{p.grid.node(i), y[i], z[i], t[i], y[0], y[n]};
            v[static_cast<std::size_t>(i)] = fd_partial(p.lagrangian, k, args);
        }
        return SampledFunction(p.grid, std::move(v));
    }
};

void require_candidate(const Problem& p, const SampledFunction& y) {
    if (!(y.grid == p.grid)) {
        throw ShapeError("candidate function lives on a different grid than the problem");
    }
}

// Value of I^(1-order) applied to seq at one end node. Order 1 makes the
// complementary operator the identity (I^0 f = f).
double complementary_integral_at(const SampledFunction& seq, FractionalOrder order,
                                 OperatorKind integral_kind, int node) {
    if (order.classical()) {
        return seq[node];
    }
    const FractionalOrder comp(1.0 - order.value());
    return apply_operator(integral_kind, seq, comp)[node];
}

} // namespace

SampledFunction euler_lagrange_residual(const Problem& p, const SampledFunction& y) {
    require_candidate(p, y);
    const EvaluatedCandidate cand(p, y);
    const SampledFunction p2 = cand.partial_sequence(p, y, 2);
    const SampledFunction p3 = cand.partial_sequence(p, y, 3);
    const SampledFunction p4 = cand.partial_sequence(p, y, 4);

    const SampledFunction d3 = apply_operator(OperatorKind::RightRLFD, p3, p.alpha);
    const SampledFunction d4 = apply_operator(OperatorKind::LeftRLFD, p4, p.beta);

    std::vector<double> v(static_cast<std::size_t>(p.grid.num_nodes()));
    for (int i = 0; i <= p.grid.n(); ++i) {
        v[static_cast<std::size_t>(i)] = p2[i] + d3[i] + d4[i];
    }
    SampledFunction out(p.grid, std::move(v));
    out.left_singular = d3.left_singular || d4.left_singular;
    out.right_singular = d3.right_singular || d4.right_singular;
    return out;
}

double euler_lagrange_norm(const SampledFunction& el_pointwise) {
    double m = 0.0;
    for (int i = 0; i <= el_pointwise.grid.n(); ++i) {
        if (!residual_node_admissible(el_pointwise, i)) continue;
        m = std::max(m, std::abs(el_pointwise[i]));
    }
    return m;
}

double natural_bc_left_residual(const Problem& p, const SampledFunction& y) {
    if (p.boundary.left.is_fixed()) {
        throw UsageError("natural boundary residual requested at a fixed left end");
    }
    require_candidate(p, y);
    const EvaluatedCandidate cand(p, y);
    const SampledFunction p3 = cand.partial_sequence(p, y, 3);
    const SampledFunction p4 = cand.partial_sequence(p, y, 4);
    const double lhs = trapezoid(cand.partial_sequence(p, y, 5));
    const double term3 = complementary_integral_at(p3, p.alpha, OperatorKind::RightRLFI, 0);
    const double term4 = complementary_integral_at(p4, p.beta, OperatorKind::LeftRLFI, 0);
    return std::abs(lhs - (term3 - term4));
}

double natural_bc_right_residual(const Problem& p, const SampledFunction& y) {
    if (p.boundary.right.is_fixed()) {
        throw UsageError("natural boundary residual requested at a fixed right end");
    }
    require_candidate(p, y);
    const int n = p.grid.n();
    const EvaluatedCandidate cand(p, y);
    const SampledFunction p3 = cand.partial_sequence(p, y, 3);
    const SampledFunction p4 = cand.partial_sequence(p, y, 4);
    const double lhs = trapezoid(cand.partial_sequence(p, y, 6));
    const double term4 = complementary_integral_at(p4, p.beta, OperatorKind::LeftRLFI, n);
    const double term3 = complementary_integral_at(p3, p.alpha, OperatorKind::RightRLFI, n);
    return std::abs(lhs - (term4 - term3));
}

ResidualReport residual_report(const Problem& p, const SampledFunction& y) {
    SampledFunction el = euler_lagrange_residual(p, y);
    const double norm = euler_lagrange_norm(el);
    std::optional<double> left;
    std::optional<double> right;
    if (!p.boundary.left.is_fixed()) {
        left = natural_bc_left_residual(p, y);
    }
    if (!p.boundary.right.is_fixed()) {
        right = natural_bc_right_residual(p, y);
    }
    return ResidualReport{std::move(el), norm, left, right};
}

ConvexityProbeReport convexity_probe(const Problem& p, const SampledFunction& y0, int trials,
                                     double magnitude, std::uint64_t seed) {
    require_candidate(p, y0);
    if (trials <= 0) {
        return ConvexityProbeReport{true, std::numeric_limits<double>::infinity()};
    }

    const double j0 = eval_functional(p, y0);
    const double tol = 1e-9 * std::max(1.0, std::abs(j0));
    const int n = p.grid.n();
    SplitMix64 rng(seed);

    double min_gap = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < trials; ++trial) {
        // Smooth perturbation: random combination of low-order polynomials
        // and polynomial bumps in the normalized coordinate.
        double c[6];
        for (double& ck : c) ck = rng.uniform(-1.0, 1.0);

        std::vector<double> h(static_cast<std::size_t>(n) + 1);
        double peak = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double s = static_cast<double>(i) / static_cast<double>(n);
            const double bump1 = s * (1.0 - s);
            const double bump2 = bump1 * bump1;
            h[static_cast<std::size_t>(i)] =
                c[0] + c[1] * s + c[2] * s * s + c[3] * s * s * s + c[4] * bump1 + c[5] * bump2;
            peak = std::max(peak, std::abs(h[static_cast<std::size_t>(i)]));
        }
        const double scale = peak > 0.0 ? magnitude / peak : 0.0;
        for (double& hi : h) hi *= scale;
        if (p.boundary.left.is_fixed()) h.front() = 0.0;
        if (p.boundary.right.is_fixed()) h.back() = 0.0;

        SampledFunction cand = y0;
        for (int i = 0; i <= n; ++i) cand[i] += h[static_cast<std::size_t>(i)];
        min_gap = std::min(min_gap, eval_functional(p, cand) - j0);
    }

    return ConvexityProbeReport{min_gap >= -tol, min_gap};
}

ResidualReport verify_against_corollary_agrawal(const Problem& p, const SampledFunction& y) {
    require_candidate(p, y);
    const int n = p.grid.n();
    const EvaluatedCandidate cand(p, y);
    const SampledFunction p5 = cand.partial_sequence(p, y, 5);
    const SampledFunction p6 = cand.partial_sequence(p, y, 6);
    for (int i = 0; i <= n; ++i) {
        if (std::abs(p5[i]) > 1e-12 || std::abs(p6[i]) > 1e-12) {
            throw UsageError("corollary verification requires d5L = d6L = 0; nonzero value at node " +
                             std::to_string(i));
        }
    }
    // The integral terms of the general conditions vanish with d5L = d6L = 0.
    const double i5 = trapezoid(p5);
    const double i6 = trapezoid(p6);
    if (std::abs(i5) > 1e-12 || std::abs(i6) > 1e-12) {
        throw UsageError("corollary verification: end-value integral terms do not vanish");
    }

    SampledFunction el = euler_lagrange_residual(p, y);
    const double norm = euler_lagrange_norm(el);

    const SampledFunction p3 = cand.partial_sequence(p, y, 3);
    const SampledFunction p4 = cand.partial_sequence(p, y, 4);
    std::optional<double> left;
    std::optional<double> right;
    if (!p.boundary.left.is_fixed()) {
        const double term3 = complementary_integral_at(p3, p.alpha, OperatorKind::RightRLFI, 0);
        const double term4 = complementary_integral_at(p4, p.beta, OperatorKind::LeftRLFI, 0);
        left = std::abs(term3 - term4);
    }
    if (!p.boundary.right.is_fixed()) {
        const double term4 = complementary_integral_at(p4, p.beta, OperatorKind::LeftRLFI, n);
        const double term3 = complementary_integral_at(p3, p.alpha, OperatorKind::RightRLFI, n);
        right = std::abs(term4 - term3);
    }
    return ResidualReport{std::move(el), norm, left, right};
}

} // namespace fracvar
