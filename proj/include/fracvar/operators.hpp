#pragma once

#include <span>
#include <vector>

#include "fracvar/grid.hpp"

namespace fracvar {

// Order of a fractional operator, restricted to (0, 1]. The value 1 selects
// the classical mode: d/dx, -d/dx and plain running integrals realized with
// finite differences and the composite trapezoid.
class FractionalOrder {
public:
    explicit FractionalOrder(double value);

    double value() const { return value_; }
    bool classical() const { return value_ == 1.0; }

private:
    double value_;
};

enum class OperatorKind {
    LeftRLFI,  // Riemann-Liouville integral anchored at a
    RightRLFI, // Riemann-Liouville integral anchored at b
    LeftRLFD,  // Riemann-Liouville derivative anchored at a
    RightRLFD, // Riemann-Liouville derivative anchored at b
    LeftCFD,   // Caputo derivative anchored at a
    RightCFD,  // Caputo derivative anchored at b
};

const char* to_string(OperatorKind kind);

// Applies one discrete fractional operator to grid samples.
//
// Discretizations: product-trapezoidal rule for the integrals (piecewise
// linear interpolant integrated exactly against the power kernel, exact on
// affine inputs), L1 scheme for the Caputo derivatives (exact on affine
// inputs, exactly zero on constants), and the Caputo-plus-boundary-term
// identity for the Riemann-Liouville derivatives. An RLFD output is flagged
// singular at its anchored end node when the sample there is nonzero.
SampledFunction apply_operator(OperatorKind kind, const SampledFunction& f, FractionalOrder order);

SampledFunction left_rlfi(const SampledFunction& f, FractionalOrder alpha);
SampledFunction right_rlfi(const SampledFunction& f, FractionalOrder alpha);
SampledFunction left_cfd(const SampledFunction& f, FractionalOrder alpha);
SampledFunction right_cfd(const SampledFunction& f, FractionalOrder alpha);
SampledFunction left_rlfd(const SampledFunction& f, FractionalOrder alpha);
SampledFunction right_rlfd(const SampledFunction& f, FractionalOrder alpha);

// Dense realization of one operator on a grid. apply() is the canonical
// application and shares its code path with the free functions above, so
// matrix application and direct application agree bit for bit and the
// Caputo kinds annihilate constants exactly. The dense entries realize the
// same linear map (within rounding of reassociation) and back the
// transposed products the solver's chain rule needs.
class OperatorMatrix {
public:
    OperatorMatrix(OperatorKind kind, FractionalOrder order, const Grid& grid);

    OperatorKind kind() const { return kind_; }
    FractionalOrder order() const { return order_; }
    const Grid& grid() const { return grid_; }

    double entry(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid_.num_nodes()) +
                        static_cast<std::size_t>(j)];
    }
    const std::vector<double>& entries() const { return entries_; }

    // Canonical application; identical to apply_operator(kind, f, order).
    SampledFunction apply(const SampledFunction& f) const;

    // Plain dense product entries * v, ascending-index accumulation.
    std::vector<double> multiply_dense(std::span<const double> v) const;

    // Transposed product entries^T * w. Classical derivative kinds use a
    // closed form in O(n); the rest fall back to the dense entries.
    std::vector<double> apply_transpose(std::span<const double> w) const;

private:
    OperatorKind kind_;
    FractionalOrder order_;
    Grid grid_;
    std::vector<double> entries_;
};

OperatorMatrix operator_matrix(OperatorKind kind, FractionalOrder order, const Grid& grid);

// |int_a^b g * (I_a^alpha f) dx - int_a^b f * (I_b^alpha g) dx| with
// composite-trapezoid quadrature; tends to zero under grid refinement.
double ibp_residual_rlfi(const SampledFunction& f, const SampledFunction& g, FractionalOrder alpha);

enum class Side { Left, Right };

// Residual of the Caputo integration-by-parts formula on the given side.
// The Riemann-Liouville derivative factor is integrated by splitting off
// its singular boundary part exactly: the Caputo part is integrated with
// the trapezoid rule and the power-kernel part with the product-trapezoidal
// fractional integral, which keeps the residual at scheme order.
double ibp_residual_caputo(const SampledFunction& f, const SampledFunction& g,
                           FractionalOrder alpha, Side side);

} // namespace fracvar
