#include "fracvar/lagrangian.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fracvar/errors.hpp"

namespace fracvar {

namespace {

double& component(LagrangianArgs& a, int i) {
    switch (i) {
        case 1: return a.x;
        case 2: return a.y;
        case 3: return a.z;
        case 4: return a.t;
        case 5: return a.u;
        case 6: return a.v;
    }
    throw DomainError("partial index must lie in 1..6, got " + std::to_string(i));
}

} // namespace

double fd_partial(const Lagrangian& lag, int i, const LagrangianArgs& at) {
    if (i < 2 || i > 6) {
        throw DomainError("fd_partial expects an argument index in 2..6, got " + std::to_string(i));
    }
    if (lag.has_partial(i)) {
        return lag.partials[static_cast<std::size_t>(i - 1)](at);
    }
    if (!lag.eval) {
        throw UsageError("fd_partial called on a Lagrangian without an evaluator");
    }

    LagrangianArgs probe = at;
    double& xi = component(probe, i);
    const double base = xi;
    const double step =
        std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::abs(base));

    xi = base + step;
    const double fp = lag.eval(probe);
    xi = base - step;
    const double fm = lag.eval(probe);
    if (!std::isfinite(fp) || !std::isfinite(fm)) {
        throw EvaluationError("Lagrangian evaluated to a non-finite value at a finite-difference probe");
    }
    return (fp - fm) / (2.0 * step);
}

} // namespace fracvar
