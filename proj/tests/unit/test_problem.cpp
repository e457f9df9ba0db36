#include <doctest.h>

#include <cmath>

#include "fracvar/errors.hpp"
#include "fracvar/problem.hpp"
#include "fracvar/rng.hpp"

using namespace fracvar;

namespace {

std::map<std::string, double> ex_params(double alpha, int n) {
    return {{"a", 0.0}, {"b", 1.0}, {"n", static_cast<double>(n)},
            {"alpha", alpha}, {"gamma", 1.0}, {"lambda", 1.0}};
}

} // namespace

TEST_CASE("fd_partial differentiates y^2") {
    Lagrangian lag;
    lag.eval = [](const LagrangianArgs& a) { return a.y * a.y; };
    const LagrangianArgs at{0.0, 3.0, 0.0, 0.0, 0.0, 0.0};
    CHECK(fd_partial(lag, 2, at) == doctest::Approx(6.0).epsilon(1e-7));
}

TEST_CASE("fd_partial on the end-value slot of the quadratic family") {
    // d/du of gamma*u^2/2 at u=0.5, gamma=1, via the numeric fallback
    Lagrangian lag;
    lag.eval = [](const LagrangianArgs& a) {
        return 0.5 * (a.z * a.z + a.u * a.u + (a.v - 1.0) * (a.v - 1.0));
    };
    const LagrangianArgs at{0.3, 0.2, 0.1, 0.0, 0.5, 0.7};
    CHECK(fd_partial(lag, 5, at) == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("fd_partial of an ignored argument is zero") {
    Lagrangian lag;
    lag.eval = [](const LagrangianArgs& a) { return a.z * a.z; };
    const LagrangianArgs at{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    CHECK(std::abs(fd_partial(lag, 4, at)) <= 1e-9);
    CHECK(std::abs(fd_partial(lag, 6, at)) <= 1e-9);
}

TEST_CASE("fd_partial prefers attached analytic partials and checks indices") {
    Lagrangian lag;
    lag.eval = [](const LagrangianArgs& a) { return a.y; };
    lag.partials[1] = [](const LagrangianArgs&) { return 42.0; };
    const LagrangianArgs at{0, 0, 0, 0, 0, 0};
    CHECK(fd_partial(lag, 2, at) == 42.0);
    CHECK_THROWS_AS(fd_partial(lag, 1, at), DomainError);
    CHECK_THROWS_AS(fd_partial(lag, 7, at), DomainError);
}

TEST_CASE("numeric partials of every registry Lagrangian match the analytic ones") {
    for (const std::string& name : builtin_problem_names()) {
        std::map<std::string, double> params = ex_params(0.5, 16);
        if (name == "classical_limit") params.erase("alpha");
        if (name == "fixed_endpoint_quadratic") {
            params["ya"] = 0.0;
            params["yb"] = 1.0;
            params.erase("gamma");
            params.erase("lambda");
        }
        const Problem p = builtin_problem(name, params);

        Lagrangian numeric;
        numeric.eval = p.lagrangian.eval; // partials left empty -> fd fallback
        SplitMix64 rng(2024);
        for (int trial = 0; trial < 100; ++trial) {
            const LagrangianArgs at{rng.uniform(0, 1),  rng.uniform(-2, 2), rng.uniform(-2, 2),
                                    rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
            for (int i = 2; i <= 6; ++i) {
                const double analytic = fd_partial(p.lagrangian, i, at);
                const double fallback = fd_partial(numeric, i, at);
                CHECK(std::abs(analytic - fallback) <= 1e-6);
            }
        }
    }
}

TEST_CASE("functional of the quadratic family at y = 0 is lambda/2") {
    const Problem p = builtin_problem("caputo_quadratic_free_endpoints", ex_params(0.5, 200));
    const auto y = SampledFunction::zeros(p.grid);
    // z = 0, u = 0, (v-1)^2 = 1: J = 1/2
    CHECK(eval_functional(p, y) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("functional of the classical problem at the closed-form minimizer is 1/6") {
    std::map<std::string, double> params = ex_params(1.0, 1000);
    params.erase("alpha");
    const Problem p = builtin_problem("classical_limit", params);
    const auto ybar = classical_quadratic_minimizer(1.0, 1.0, p.grid);
    CHECK(eval_functional(p, ybar) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("functional with integrand y only integrates y") {
    Problem p{Lagrangian{[](const LagrangianArgs& a) { return a.y; }, {}, true},
              FractionalOrder(0.5),
              FractionalOrder(0.5),
              {BoundaryCondition::free(), BoundaryCondition::free()},
              Grid(0.0, 3.0, 60)};
    const auto y = SampledFunction::constant(p.grid, 2.0);
    CHECK(eval_functional(p, y) == doctest::Approx(6.0).epsilon(1e-13));
}

TEST_CASE("functional is linear in the Lagrangian") {
    const Grid g(0.0, 1.0, 64);
    Lagrangian l1{[](const LagrangianArgs& a) { return a.z * a.z + a.u; }, {}, true};
    Lagrangian l2{[](const LagrangianArgs& a) { return a.y * a.t + a.v; }, {}, true};
    const double c1 = 2.25;
    const double c2 = -0.75;
    Lagrangian combo{[=](const LagrangianArgs& a) { return c1 * l1.eval(a) + c2 * l2.eval(a); },
                     {},
                     true};
    const BoundarySpec free_free{BoundaryCondition::free(), BoundaryCondition::free()};
    const Problem p1{l1, FractionalOrder(0.4), FractionalOrder(0.7), free_free, g};
    const Problem p2{l2, FractionalOrder(0.4), FractionalOrder(0.7), free_free, g};
    const Problem pc{combo, FractionalOrder(0.4), FractionalOrder(0.7), free_free, g};
    const auto y = SampledFunction::sample(g, [](double x) { return std::sin(3.0 * x); });
    const double want = c1 * eval_functional(p1, y) + c2 * eval_functional(p2, y);
    CHECK(eval_functional(pc, y) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("boundary spec does not change the value when L ignores the end values") {
    const Grid g(0.0, 1.0, 40);
    Lagrangian lag{[](const LagrangianArgs& a) { return a.z * a.z + a.y; }, {}, true};
    const auto y = SampledFunction::sample(g, [](double x) { return x * x; });
    const Problem free_p{lag, FractionalOrder(0.5), FractionalOrder(0.5),
                         {BoundaryCondition::free(), BoundaryCondition::free()}, g};
    const Problem fixed_p{lag, FractionalOrder(0.5), FractionalOrder(0.5),
                          {BoundaryCondition::fixed(0.0), BoundaryCondition::fixed(1.0)}, g};
    CHECK(eval_functional(free_p, y) == eval_functional(fixed_p, y));
}

TEST_CASE("fixed boundary values are enforced") {
    std::map<std::string, double> params{{"a", 0.0}, {"b", 1.0},  {"n", 32.0},
                                         {"alpha", 1.0}, {"ya", 0.0}, {"yb", 1.0}};
    const Problem p = builtin_problem("fixed_endpoint_quadratic", params);

    auto bad = SampledFunction::sample(p.grid, [](double x) { return x; });
    bad[0] = 0.5;
    CHECK_THROWS_AS(eval_functional(p, bad), ConstraintError);

    auto nearly = SampledFunction::sample(p.grid, [](double x) { return x; });
    nearly[0] = 5e-13; // inside projection tolerance
    CHECK(eval_functional(p, nearly) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("evaluation failures carry the node index") {
    const Grid g(0.0, 1.0, 8);
    Problem p{Lagrangian{[](const LagrangianArgs& a) {
                  return a.x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
              },
                         {},
                         false},
              FractionalOrder(1.0),
              FractionalOrder(1.0),
              {BoundaryCondition::free(), BoundaryCondition::free()},
              g};
    const auto y = SampledFunction::zeros(g);
    try {
        eval_functional(p, y);
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        CHECK(e.node() >= 5);
    }
}

TEST_CASE("functional rejects foreign grids") {
    const Problem p = builtin_problem("caputo_quadratic_free_endpoints", ex_params(0.5, 32));
    CHECK_THROWS_AS(eval_functional(p, SampledFunction::zeros(Grid(0.0, 1.0, 33))), ShapeError);
}

TEST_CASE("registry configures the paper family") {
    const Problem p = builtin_problem("caputo_quadratic_free_endpoints", ex_params(0.5, 100));
    CHECK_FALSE(p.boundary.left.is_fixed());
    CHECK_FALSE(p.boundary.right.is_fixed());
    CHECK(p.alpha.value() == 0.5);
    CHECK(p.beta.value() == 0.5); // defaults to alpha
    CHECK(p.grid.n() == 100);

    std::map<std::string, double> cp{{"a", 0.0}, {"b", 1.0}, {"n", 50.0},
                                     {"gamma", 2.0}, {"lambda", 3.0}};
    const Problem c = builtin_problem("classical_limit", cp);
    CHECK(c.alpha.classical());
    CHECK(c.beta.classical());

    std::map<std::string, double> fp{{"a", 0.0}, {"b", 1.0},  {"n", 50.0},
                                     {"alpha", 1.0}, {"ya", 0.25}, {"yb", 0.75}};
    const Problem f = builtin_problem("fixed_endpoint_quadratic", fp);
    CHECK(f.boundary.left.is_fixed());
    CHECK(f.boundary.left.value == 0.25);
    CHECK(f.boundary.right.value == 0.75);
}

TEST_CASE("registry rejects unknown names and incomplete parameters") {
    CHECK_THROWS_AS(builtin_problem("foo", {}), RegistryError);

    auto params = ex_params(0.5, 100);
    params.erase("alpha");
    CHECK_THROWS_AS(builtin_problem("caputo_quadratic_free_endpoints", params), ConfigError);

    auto cp = ex_params(0.5, 100); // alpha=0.5 is not a classical problem
    CHECK_THROWS_AS(builtin_problem("classical_limit", cp), ConfigError);

    auto extra = ex_params(0.5, 100);
    extra["bogus"] = 1.0;
    CHECK_THROWS_AS(builtin_problem("caputo_quadratic_free_endpoints", extra), ConfigError);

    auto frac_n = ex_params(0.5, 100);
    frac_n["n"] = 10.5;
    CHECK_THROWS_AS(builtin_problem("caputo_quadratic_free_endpoints", frac_n), ConfigError);
}

TEST_CASE("classical closed-form minimizer satisfies its defining relations") {
    // slope = gamma * (b-a) * intercept and the right-end relation, for a
    // non-unit interval as well
    const Grid g(1.0, 3.0, 10);
    const double gamma_c = 2.0;
    const double lambda_c = 5.0;
    const auto y = classical_quadratic_minimizer(gamma_c, lambda_c, g);
    const double span = 2.0;
    const double slope = (y[1] - y[0]) / g.h();
    CHECK(slope == doctest::Approx(gamma_c * span * y[0]).epsilon(1e-12));
    CHECK(lambda_c * span * (y[g.n()] - 1.0) == doctest::Approx(-slope).epsilon(1e-12));
}
