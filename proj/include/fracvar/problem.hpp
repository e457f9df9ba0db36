#pragma once

#include <map>
#include <string>
#include <vector>

#include "fracvar/grid.hpp"
#include "fracvar/lagrangian.hpp"
#include "fracvar/operators.hpp"

namespace fracvar {

// One end-point condition: pinned to a value, or left free (a decision
// variable of the direct method, subject to the natural boundary condition).
struct BoundaryCondition {
    enum class Type { Fixed, Free };

    Type type = Type::Free;
    double value = 0.0;

    static BoundaryCondition fixed(double v) { return {Type::Fixed, v}; }
    static BoundaryCondition free() { return {Type::Free, 0.0}; }
    bool is_fixed() const { return type == Type::Fixed; }
};

struct BoundarySpec {
    BoundaryCondition left;
    BoundaryCondition right;
};

// The variational problem: minimize the integral of
// L(x, y, D_a^alpha y, D_b^beta y, y(a), y(b)) over [a, b], with each end
// value either pinned or free.
struct Problem {
    Lagrangian lagrangian;
    FractionalOrder alpha; // order of the left Caputo derivative (z slot)
    FractionalOrder beta;  // order of the right Caputo derivative (t slot)
    BoundarySpec boundary;
    Grid grid;
};

// Trapezoid quadrature of the integrand along y, with z/t the discrete
// Caputo derivatives and u/v the end values. Fixed end conditions are
// enforced: violations beyond 1e-12 raise ConstraintError, smaller
// discrepancies are projected onto the exact values before evaluation.
double eval_functional(const Problem& p, const SampledFunction& y);

// Internal evaluation on values that are already known to satisfy the fixed
// end conditions exactly (solver iterates). Skips the projection check.
double eval_functional_unchecked(const Problem& p, const SampledFunction& y);

// Built-in problem registry. Names:
//   "caputo_quadratic_free_endpoints"  L = (z^2 + gamma u^2 + lambda (v-1)^2)/2,
//                                      both ends free
//                                      (params: a, b, n, alpha, gamma, lambda;
//                                       beta defaults to alpha)
//   "classical_limit"                  same integrand at alpha = beta = 1
//                                      (params: a, b, n, gamma, lambda)
//   "fixed_endpoint_quadratic"         L = z^2/2, ends fixed at ya / yb
//                                      (params: a, b, n, alpha, ya, yb)
Problem builtin_problem(const std::string& name, const std::map<std::string, double>& params);

std::vector<std::string> builtin_problem_names();

// Closed-form minimizer of the classical quadratic family,
// y(x) = (gl*x + l) / (gl + l + g) mapped affinely onto [a, b].
SampledFunction classical_quadratic_minimizer(double gamma_coef, double lambda_coef, const Grid& g);

} // namespace fracvar
