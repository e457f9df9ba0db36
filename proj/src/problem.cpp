#include "fracvar/problem.hpp"

#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "fracvar/errors.hpp"

namespace fracvar {

namespace {

constexpr double kFixedTolerance = 1e-12;

double evaluate_node(const Problem& p, const SampledFunction& y, const SampledFunction& z,
                     const SampledFunction& t, int i) {
    const LagrangianArgs args{p.grid.node(i), y[i], z[i], t[i], y[0], y[p.grid.n()]};
    const double value = p.lagrangian.eval(args);
    if (!std::isfinite(value)) {
        throw EvaluationError("Lagrangian evaluated to a non-finite value at node " +
                                  std::to_string(i),
                              i);
    }
    return value;
}

double quadrature_of_lagrangian(const Problem& p, const SampledFunction& y) {
    if (!p.lagrangian.eval) {
        throw UsageError("problem has no Lagrangian evaluator");
    }
    const SampledFunction z = apply_operator(OperatorKind::LeftCFD, y, p.alpha);
    const SampledFunction t = apply_operator(OperatorKind::RightCFD, y, p.beta);
    const int n = p.grid.n();
    double acc = 0.5 * (evaluate_node(p, y, z, t, 0) + evaluate_node(p, y, z, t, n));
    for (int i = 1; i < n; ++i) {
        acc += evaluate_node(p, y, z, t, i);
    }
    return acc * p.grid.h();
}

} // namespace

double eval_functional(const Problem& p, const SampledFunction& y) {
    if (!(y.grid == p.grid)) {
        throw ShapeError("candidate function lives on a different grid than the problem");
    }
    SampledFunction yy = y;
    if (p.boundary.left.is_fixed()) {
        if (std::abs(yy[0] - p.boundary.left.value) > kFixedTolerance) {
            throw ConstraintError("left end value violates the fixed boundary condition");
        }
        yy[0] = p.boundary.left.value;
    }
    if (p.boundary.right.is_fixed()) {
        if (std::abs(yy[p.grid.n()] - p.boundary.right.value) > kFixedTolerance) {
            throw ConstraintError("right end value violates the fixed boundary condition");
        }
        yy[p.grid.n()] = p.boundary.right.value;
    }
    return quadrature_of_lagrangian(p, yy);
}

double eval_functional_unchecked(const Problem& p, const SampledFunction& y) {
    return quadrature_of_lagrangian(p, y);
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

namespace {

class ParamReader {
public:
    explicit ParamReader(const std::map<std::string, double>& params) : params_(params) {}

    double require(const std::string& key) {
        auto it = params_.find(key);
        if (it == params_.end()) {
            throw ConfigError("missing required parameter '" + key + "'");
        }
        used_.insert(key);
        return it->second;
    }

    double optional(const std::string& key, double fallback) {
        auto it = params_.find(key);
        if (it == params_.end()) return fallback;
        used_.insert(key);
        return it->second;
    }

    bool has(const std::string& key) const { return params_.count(key) != 0; }

    int require_int(const std::string& key) {
        const double v = require(key);
        const double r = std::nearbyint(v);
        if (v != r) {
            throw ConfigError("parameter '" + key + "' must be an integer, got " +
                              std::to_string(v));
        }
        return static_cast<int>(r);
    }

    void reject_unknown() const {
        for (const auto& [key, value] : params_) {
            (void)value;
            if (used_.count(key) == 0) {
                throw ConfigError("unknown parameter '" + key + "'");
            }
        }
    }

private:
    const std::map<std::string, double>& params_;
    std::set<std::string> used_;
};

// Integrand of the quadratic end-point family:
// L = (z^2 + gamma u^2 + lambda (v - 1)^2) / 2, with analytic partials.
Lagrangian quadratic_endpoint_lagrangian(double gamma_coef, double lambda_coef) {
    Lagrangian lag;
    lag.eval = [gamma_coef, lambda_coef](const LagrangianArgs& a) {
        return 0.5 * (a.z * a.z + gamma_coef * a.u * a.u +
                      lambda_coef * (a.v - 1.0) * (a.v - 1.0));
    };
    lag.partials[0] = [](const LagrangianArgs&) { return 0.0; };
    lag.partials[1] = [](const LagrangianArgs&) { return 0.0; };
    lag.partials[2] = [](const LagrangianArgs& a) { return a.z; };
    lag.partials[3] = [](const LagrangianArgs&) { return 0.0; };
    lag.partials[4] = [gamma_coef](const LagrangianArgs& a) { return gamma_coef * a.u; };
    lag.partials[5] = [lambda_coef](const LagrangianArgs& a) { return lambda_coef * (a.v - 1.0); };
    lag.smoothness_declared = true;
    return lag;
}

Lagrangian derivative_energy_lagrangian() {
    Lagrangian lag;
    lag.eval = [](const LagrangianArgs& a) { return 0.5 * a.z * a.z; };
    lag.partials[0] = [](const LagrangianArgs&) { return 0.0; };
    lag.partials[1] = [](const LagrangianArgs&) { return 0.0; };
    lag.partials[2] = [](const LagrangianArgs& a) { return a.z; };
    lag.partials[3] = [](const LagrangianArgs&) { return 0.0; };
    lag.partials[4] = [](const LagrangianArgs&) { return 0.0; };
    lag.partials[5] = [](const LagrangianArgs&) { return 0.0; };
    lag.smoothness_declared = true;
    return lag;
}

} // namespace

Problem builtin_problem(const std::string& name, const std::map<std::string, double>& params) {
    ParamReader reader(params);

    if (name == "caputo_quadratic_free_endpoints") {
        const double a = reader.require("a");
        const double b = reader.require("b");
        const int n = reader.require_int("n");
        const FractionalOrder alpha(reader.require("alpha"));
        const FractionalOrder beta(reader.optional("beta", alpha.value()));
        const double gamma_coef = reader.require("gamma");
        const double lambda_coef = reader.require("lambda");
        reader.reject_unknown();
        return Problem{quadratic_endpoint_lagrangian(gamma_coef, lambda_coef),
                       alpha,
                       beta,
                       {BoundaryCondition::free(), BoundaryCondition::free()},
                       Grid(a, b, n)};
    }

    if (name == "classical_limit") {
        const double a = reader.require("a");
        const double b = reader.require("b");
        const int n = reader.require_int("n");
        const double gamma_coef = reader.require("gamma");
        const double lambda_coef = reader.require("lambda");
        if (reader.optional("alpha", 1.0) != 1.0 || reader.optional("beta", 1.0) != 1.0) {
            throw ConfigError("classical_limit requires alpha = beta = 1");
        }
        reader.reject_unknown();
        return Problem{quadratic_endpoint_lagrangian(gamma_coef, lambda_coef),
                       FractionalOrder(1.0),
                       FractionalOrder(1.0),
                       {BoundaryCondition::free(), BoundaryCondition::free()},
                       Grid(a, b, n)};
    }

    if (name == "fixed_endpoint_quadratic") {
        const double a = reader.require("a");
        const double b = reader.require("b");
        const int n = reader.require_int("n");
        const FractionalOrder alpha(reader.require("alpha"));
        const FractionalOrder beta(reader.optional("beta", alpha.value()));
        const double ya = reader.require("ya");
        const double yb = reader.require("yb");
        reader.reject_unknown();
        return Problem{derivative_energy_lagrangian(),
                       alpha,
                       beta,
                       {BoundaryCondition::fixed(ya), BoundaryCondition::fixed(yb)},
                       Grid(a, b, n)};
    }

    throw RegistryError("unknown built-in problem '" + name + "'");
}

std::vector<std::string> builtin_problem_names() {
    return {"caputo_quadratic_free_endpoints", "classical_limit", "fixed_endpoint_quadratic"};
}

SampledFunction classical_quadratic_minimizer(double gamma_coef, double lambda_coef, const Grid& g) {
    // Affine stationary function of the classical quadratic family on [a, b]:
    // y = c + s*(x - a) where s and c solve gamma*T*c = s and
    // lambda*T*(c + s*T - 1) = -s with T = b - a. On [0, 1] this is the
    // familiar (gamma*lambda*x + lambda) / (gamma*lambda + lambda + gamma).
    const double span = g.b() - g.a();
    const double denom = lambda_coef + lambda_coef * gamma_coef * span * span + gamma_coef;
    const double intercept = lambda_coef / denom;
    const double slope = gamma_coef * lambda_coef * span / denom;
    std::vector<double> v(static_cast<std::size_t>(g.num_nodes()));
    for (int i = 0; i <= g.n(); ++i) {
        v[static_cast<std::size_t>(i)] = intercept + slope * (g.node(i) - g.a());
    }
    return SampledFunction(g, std::move(v));
}

} // namespace fracvar
