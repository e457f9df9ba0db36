#include "fracvar/grid.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "fracvar/errors.hpp"

namespace fracvar {

Grid::Grid(double a, double b, int n) : a_(a), b_(b), n_(n) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw GridError("grid end-points must be finite");
    }
    if (!(a < b)) {
        throw GridError("grid requires a < b, got a=" + std::to_string(a) +
                        " b=" + std::to_string(b));
    }
    if (n < 2) {
        throw GridError("grid requires n >= 2 intervals, got n=" + std::to_string(n));
    }
    h_ = (b - a) / static_cast<double>(n);
}

SampledFunction::SampledFunction(Grid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.num_nodes()) {
        throw ShapeError("sampled function has " + std::to_string(values.size()) +
                         " values for a grid with " + std::to_string(grid.num_nodes()) +
                         " nodes");
    }
    for (double x : values) {
        if (!std::isfinite(x)) {
            throw ShapeError("sampled function contains a non-finite value");
        }
    }
}

SampledFunction SampledFunction::zeros(const Grid& g) {
    return SampledFunction(g, std::vector<double>(static_cast<std::size_t>(g.num_nodes()), 0.0));
}

SampledFunction SampledFunction::constant(const Grid& g, double c) {
    return SampledFunction(g, std::vector<double>(static_cast<std::size_t>(g.num_nodes()), c));
}

SampledFunction SampledFunction::sample(const Grid& g, const std::function<double(double)>& f) {
    std::vector<double> v(static_cast<std::size_t>(g.num_nodes()));
    for (int i = 0; i <= g.n(); ++i) {
        v[static_cast<std::size_t>(i)] = f(g.node(i));
    }
    return SampledFunction(g, std::move(v));
}

void require_same_grid(const SampledFunction& f, const SampledFunction& g) {
    if (!(f.grid == g.grid)) {
        throw ShapeError("operands live on different grids");
    }
}

std::vector<double> trapezoid_weights(const Grid& g) {
    std::vector<double> w(static_cast<std::size_t>(g.num_nodes()), g.h());
    w.front() = 0.5 * g.h();
    w.back() = 0.5 * g.h();
    return w;
}

double trapezoid(const SampledFunction& f) {
    const int n = f.grid.n();
    double acc = 0.5 * (f[0] + f[n]);
    for (int i = 1; i < n; ++i) {
        acc += f[i];
    }
    return acc * f.grid.h();
}

double max_abs(const SampledFunction& f) {
    const int n = f.grid.n();
    double m = 0.0;
    for (int i = 0; i <= n; ++i) {
        if (i == 0 && f.left_singular) continue;
        if (i == n && f.right_singular) continue;
        m = std::max(m, std::abs(f[i]));
    }
    return m;
}

} // namespace fracvar
