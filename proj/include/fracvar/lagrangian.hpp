#pragma once

#include <array>
#include <functional>

namespace fracvar {

// Argument tuple of the integrand, in the fixed order
// (x, y, z, t, u, v) = (node, value, left-Caputo value, right-Caputo value,
// left end value, right end value). Partial-derivative indices below are
// 1-based against this order.
struct LagrangianArgs {
    double x;
    double y;
    double z;
    double t;
    double u;
    double v;
};

using LagrangianFn = std::function<double(const LagrangianArgs&)>;

// Integrand of the variational problem together with optional analytic
// partials; absent partials fall back to central finite differences.
struct Lagrangian {
    LagrangianFn eval;
    std::array<LagrangianFn, 6> partials{}; // slot i-1 holds d_i L
    bool smoothness_declared = false;

    bool has_partial(int i) const {
        return i >= 1 && i <= 6 && static_cast<bool>(partials[static_cast<std::size_t>(i - 1)]);
    }
};

// d_i L at the given point, i in 2..6. Uses the analytic partial when
// attached; otherwise a central difference with step
// cbrt(machine epsilon) * max(1, |point_i|).
double fd_partial(const Lagrangian& lag, int i, const LagrangianArgs& at);

} // namespace fracvar
