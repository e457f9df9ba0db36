#pragma once

#include <functional>
#include <vector>

namespace fracvar {

// Uniform partition of [a, b] into n intervals; nodes x_i = a + i*h,
// i = 0..n. The discrete domain shared by every operator in the library.
class Grid {
public:
    Grid(double a, double b, int n);

    double a() const { return a_; }
    double b() const { return b_; }
    int n() const { return n_; }
    double h() const { return h_; }
    int num_nodes() const { return n_ + 1; }
    double node(int i) const { return a_ + static_cast<double>(i) * h_; }

    friend bool operator==(const Grid& lhs, const Grid& rhs) {
        return lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_ && lhs.n_ == rhs.n_;
    }

private:
    double a_;
    double b_;
    int n_;
    double h_;
};

// Grid-aligned real samples. Operator outputs may flag an end node as
// singular (Riemann-Liouville derivatives of functions not vanishing at the
// anchored end); flagged nodes hold the regular part of the value and are
// skipped by norms and residual reductions.
struct SampledFunction {
    Grid grid;
    std::vector<double> values;
    bool left_singular = false;
    bool right_singular = false;

    SampledFunction(Grid g, std::vector<double> v);

    static SampledFunction zeros(const Grid& g);
    static SampledFunction constant(const Grid& g, double c);
    static SampledFunction sample(const Grid& g, const std::function<double(double)>& f);

    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return values[static_cast<std::size_t>(i)]; }
    int size() const { return static_cast<int>(values.size()); }
};

// Throws ShapeError unless both functions share one grid.
void require_same_grid(const SampledFunction& f, const SampledFunction& g);

// Composite-trapezoid node weights (h/2, h, ..., h, h/2).
std::vector<double> trapezoid_weights(const Grid& g);

// Composite-trapezoid integral of the node samples over [a, b].
double trapezoid(const SampledFunction& f);

// Max-abs over nodes, skipping singular-flagged end nodes.
double max_abs(const SampledFunction& f);

} // namespace fracvar
