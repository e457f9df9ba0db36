#include <doctest.h>

#include <cmath>

#include "fracvar/errors.hpp"
#include "fracvar/operators.hpp"
#include "oracles.hpp"

using namespace fracvar;

namespace {

SampledFunction sample(const Grid& g, double (*f)(double)) {
    return SampledFunction::sample(g, f);
}

double fx(double x) { return x; }
double fx2(double x) { return x * x; }
double gx(double x) { return 1.0 - x; }

} // namespace

TEST_CASE("RLFI integration by parts vanishes on zero input") {
    const Grid g(0.0, 1.0, 64);
    const auto zero = SampledFunction::zeros(g);
    const auto other = sample(g, fx2);
    CHECK(ibp_residual_rlfi(zero, other, FractionalOrder(0.5)) == 0.0);
}

TEST_CASE("RLFI integration by parts on f=x, g=1-x") {
    const Grid g(0.0, 1.0, 2000);
    const double res = ibp_residual_rlfi(sample(g, fx), sample(g, gx), FractionalOrder(0.5));
    CHECK(res <= 1e-3);

    // both sides equal (4/35)/Gamma(2.5); cross-check the discrete sides
    // against the frozen value computed from the closed forms
    const double frozen = 0.085971746064420005630;
    const auto If = left_rlfi(sample(g, fx), FractionalOrder(0.5));
    double lhs = 0.0;
    {
        const auto gg = sample(g, gx);
        std::vector<double> prod(static_cast<std::size_t>(g.num_nodes()));
        for (int i = 0; i <= g.n(); ++i) prod[static_cast<std::size_t>(i)] = gg[i] * If[i];
        lhs = trapezoid(SampledFunction(g, std::move(prod)));
    }
    CHECK(lhs == doctest::Approx(frozen).epsilon(1e-6));

    // and validate the frozen value itself against the quadrature oracle
    const double lhs_oracle = oracles::adaptive_simpson(
        [](double x) {
            return (1.0 - x) * oracles::left_rlfi([](double t) { return t; }, 0.0, x, 0.5);
        },
        0.0, 1.0, 1e-10);
    CHECK(lhs_oracle == doctest::Approx(frozen).epsilon(1e-8));
}

TEST_CASE("RLFI integration by parts residual shrinks under refinement") {
    double prev = -1.0;
    for (int n : {250, 500, 1000, 2000}) {
        const Grid g(0.0, 1.0, n);
        const double res = ibp_residual_rlfi(sample(g, fx), sample(g, gx), FractionalOrder(0.5));
        if (prev >= 0.0) CHECK(prev / res >= 1.5);
        prev = res;
    }
}

TEST_CASE("Caputo integration by parts with constant f reduces to the boundary relation") {
    const Grid g(0.0, 1.0, 1000);
    const auto c = SampledFunction::constant(g, 2.5);
    const auto gg = sample(g, fx2);
    CHECK(ibp_residual_caputo(c, gg, FractionalOrder(0.5), Side::Left) <= 5e-3);
    CHECK(ibp_residual_caputo(c, gg, FractionalOrder(0.5), Side::Right) <= 5e-3);
}

TEST_CASE("Caputo integration by parts on f=x, g=x^2") {
    const Grid g(0.0, 1.0, 2000);
    const double res =
        ibp_residual_caputo(sample(g, fx), sample(g, fx2), FractionalOrder(0.5), Side::Left);
    CHECK(res <= 5e-3);

    // oracle check of the identity itself: lhs equals the frozen closed form
    // (2/7)/Gamma(1.5), and the right-hand side integral reproduces it since
    // the boundary bracket vanishes for this pair
    const double frozen_lhs = 0.32239404774157502111;
    const double lhs_oracle = oracles::adaptive_simpson(
        [](double x) {
            return x * x * oracles::left_cfd([](double) { return 1.0; }, 0.0, x, 0.5);
        },
        0.0, 1.0, 1e-10);
    CHECK(lhs_oracle == doctest::Approx(frozen_lhs).epsilon(1e-8));

    // mirror side on the same pair
    const double res_r =
        ibp_residual_caputo(sample(g, fx), sample(g, fx2), FractionalOrder(0.5), Side::Right);
    CHECK(res_r <= 5e-3);
}

TEST_CASE("Caputo integration by parts residual decreases monotonically") {
    for (Side side : {Side::Left, Side::Right}) {
        double prev = -1.0;
        for (int n : {500, 1000, 2000}) {
            const Grid g(0.0, 1.0, n);
            const double res =
                ibp_residual_caputo(sample(g, fx), sample(g, fx2), FractionalOrder(0.5), side);
            if (prev >= 0.0) CHECK(res < prev);
            prev = res;
        }
    }
}

TEST_CASE("ibp residuals reject mismatched grids") {
    const Grid g1(0.0, 1.0, 64);
    const Grid g2(0.0, 1.0, 65);
    CHECK_THROWS_AS(
        ibp_residual_rlfi(SampledFunction::zeros(g1), SampledFunction::zeros(g2),
                          FractionalOrder(0.5)),
        ShapeError);
    CHECK_THROWS_AS(
        ibp_residual_caputo(SampledFunction::zeros(g1), SampledFunction::zeros(g2),
                            FractionalOrder(0.5), Side::Left),
        ShapeError);
}

TEST_CASE("classical limit of the Caputo identity is plain integration by parts") {
    const Grid g(0.0, 1.0, 1500);
    const double res =
        ibp_residual_caputo(sample(g, fx2), sample(g, gx), FractionalOrder(1.0), Side::Left);
    CHECK(res <= 1e-5);
}
