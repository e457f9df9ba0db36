#include "fracvar/operators.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "fracvar/errors.hpp"
#include "fracvar/special.hpp"

namespace fracvar {

FractionalOrder::FractionalOrder(double value) : value_(value) {
    if (!std::isfinite(value) || value <= 0.0 || value > 1.0) {
        throw DomainError("fractional order must lie in (0, 1], got " + std::to_string(value));
    }
}

const char* to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::LeftRLFI: return "LeftRLFI";
        case OperatorKind::RightRLFI: return "RightRLFI";
        case OperatorKind::LeftRLFD: return "LeftRLFD";
        case OperatorKind::RightRLFD: return "RightRLFD";
        case OperatorKind::LeftCFD: return "LeftCFD";
        case OperatorKind::RightCFD: return "RightCFD";
    }
    return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Weight tables.
//
// L1 scheme for the Caputo derivative of order alpha on a uniform grid:
//   (D^alpha f)(x_k) ~ s * sum_{j<k} d[k-j] * (f[j+1] - f[j]),
//   d[m] = m^(1-alpha) - (m-1)^(1-alpha),  s = h^(-alpha) / Gamma(2-alpha).
//
// Product-trapezoidal rule for the fractional integral of order alpha:
//   (I^alpha f)(x_m) ~ c * sum_{j<=m} a[j,m] * f[j],  c = h^alpha / Gamma(alpha+2),
//   a[m,m] = 1,
//   a[j,m] = (m-j+1)^(a+1) - 2(m-j)^(a+1) + (m-j-1)^(a+1)   (0 < j < m),
//   a[0,m] = (m-1)^(a+1) - (m-1-alpha) * m^alpha.
// ---------------------------------------------------------------------------

std::vector<double> l1_diff_weights(int n, double alpha) {
    std::vector<double> d(static_cast<std::size_t>(n) + 1, 0.0);
    const double e = 1.0 - alpha;
    double prev = 0.0;
    for (int m = 1; m <= n; ++m) {
        const double cur = std::pow(static_cast<double>(m), e);
        d[static_cast<std::size_t>(m)] = cur - prev;
        prev = cur;
    }
    return d;
}

struct RlfiWeightTable {
    std::vector<double> p1; // r^(alpha+1), r = 0..n
    std::vector<double> pa; // r^alpha,     r = 0..n
    double alpha;
    double scale; // h^alpha / Gamma(alpha+2)

    RlfiWeightTable(int n, double alpha_, double h) : alpha(alpha_) {
        p1.resize(static_cast<std::size_t>(n) + 1);
        pa.resize(static_cast<std::size_t>(n) + 1);
        for (int r = 0; r <= n; ++r) {
            p1[static_cast<std::size_t>(r)] = std::pow(static_cast<double>(r), alpha + 1.0);
            pa[static_cast<std::size_t>(r)] = std::pow(static_cast<double>(r), alpha);
        }
        scale = std::pow(h, alpha) / gamma(alpha + 2.0);
    }

    // Weight of sample j in the row targeting node m (1 <= m, 0 <= j <= m),
    // already including the scale factor.
    double weight(int j, int m) const {
        if (j == m) return scale;
        if (j == 0) {
            return scale * (p1[static_cast<std::size_t>(m - 1)] -
                            (static_cast<double>(m - 1) - alpha) * pa[static_cast<std::size_t>(m)]);
        }
        const int r = m - j;
        return scale * (p1[static_cast<std::size_t>(r + 1)] - 2.0 * p1[static_cast<std::size_t>(r)] +
                        p1[static_cast<std::size_t>(r - 1)]);
    }
};

// --- classical (alpha = 1) building blocks -------------------------------

// First derivative: central differences inside, one-sided differences on
// the two end rows. Together with the trapezoid weights this pair satisfies
// a discrete integration-by-parts identity exactly, which makes the
// discrete natural boundary conditions of the direct method reproduce the
// continuous ones at machine precision.
std::vector<double> classical_derivative(const SampledFunction& f) {
    const int n = f.grid.n();
    const double h = f.grid.h();
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    out[0] = (f[1] - f[0]) / h;
    for (int i = 1; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
    out[static_cast<std::size_t>(n)] = (f[n] - f[n - 1]) / h;
    return out;
}

std::vector<double> classical_left_integral(const SampledFunction& f) {
    const int n = f.grid.n();
    const double h = f.grid.h();
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
        out[static_cast<std::size_t>(i)] =
            out[static_cast<std::size_t>(i - 1)] + 0.5 * h * (f[i - 1] + f[i]);
    }
    return out;
}

std::vector<double> classical_right_integral(const SampledFunction& f) {
    const int n = f.grid.n();
    const double h = f.grid.h();
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] =
            out[static_cast<std::size_t>(i + 1)] + 0.5 * h * (f[i] + f[i + 1]);
    }
    return out;
}

// --- fractional applications ----------------------------------------------

std::vector<double> apply_left_cfd(const SampledFunction& f, double alpha) {
    const int n = f.grid.n();
    const double s = std::pow(f.grid.h(), -alpha) / gamma(2.0 - alpha);
    const std::vector<double> d = l1_diff_weights(n, alpha);
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        for (int j = 0; j < k; ++j) {
            acc += d[static_cast<std::size_t>(k - j)] * (f[j + 1] - f[j]);
        }
        out[static_cast<std::size_t>(k)] = s * acc;
    }
    return out;
}

std::vector<double> apply_right_cfd(const SampledFunction& f, double alpha) {
    const int n = f.grid.n();
    const double s = std::pow(f.grid.h(), -alpha) / gamma(2.0 - alpha);
    const std::vector<double> d = l1_diff_weights(n, alpha);
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int j = k; j < n; ++j) {
            acc += d[static_cast<std::size_t>(j - k + 1)] * (f[j + 1] - f[j]);
        }
        out[static_cast<std::size_t>(k)] = -s * acc;
    }
    return out;
}

std::vector<double> apply_left_rlfi(const SampledFunction& f, double alpha) {
    const int n = f.grid.n();
    const RlfiWeightTable w(n, alpha, f.grid.h());
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    for (int m = 1; m <= n; ++m) {
        double acc = 0.0;
        for (int j = 0; j <= m; ++j) {
            acc += w.weight(j, m) * f[j];
        }
        out[static_cast<std::size_t>(m)] = acc;
    }
    return out;
}

std::vector<double> apply_right_rlfi(const SampledFunction& f, double alpha) {
    const int n = f.grid.n();
    const RlfiWeightTable w(n, alpha, f.grid.h());
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 0; k < n; ++k) {
        const int m = n - k; // intervals to the right of x_k
        double acc = 0.0;
        for (int j = k; j <= n; ++j) {
            acc += w.weight(m - (j - k), m) * f[j];
        }
        out[static_cast<std::size_t>(k)] = acc;
    }
    return out;
}

// Power-kernel correction turning a Caputo derivative into the
// Riemann-Liouville one; dist_i is the distance from the anchored end.
double rlfd_correction(double dist, double alpha, double gamma_1ma) {
    return std::pow(dist, -alpha) / gamma_1ma;
}

} // namespace

SampledFunction apply_operator(OperatorKind kind, const SampledFunction& f, FractionalOrder order) {
    const int n = f.grid.n();
    const double h = f.grid.h();
    const double alpha = order.value();

    switch (kind) {
        case OperatorKind::LeftRLFI: {
            auto v = order.classical() ? classical_left_integral(f) : apply_left_rlfi(f, alpha);
            return SampledFunction(f.grid, std::move(v));
        }
        case OperatorKind::RightRLFI: {
            auto v = order.classical() ? classical_right_integral(f) : apply_right_rlfi(f, alpha);
            return SampledFunction(f.grid, std::move(v));
        }
        case OperatorKind::LeftCFD: {
            auto v = order.classical() ? classical_derivative(f) : apply_left_cfd(f, alpha);
            return SampledFunction(f.grid, std::move(v));
        }
        case OperatorKind::RightCFD: {
            std::vector<double> v;
            if (order.classical()) {
                v = classical_derivative(f);
                for (double& x : v) x = -x;
            } else {
                v = apply_right_cfd(f, alpha);
            }
            return SampledFunction(f.grid, std::move(v));
        }
        case OperatorKind::LeftRLFD: {
            if (order.classical()) {
                return SampledFunction(f.grid, classical_derivative(f));
            }
            auto v = apply_left_cfd(f, alpha);
            SampledFunction out(f.grid, std::move(v));
            if (f[0] != 0.0) {
                const double g1 = gamma(1.0 - alpha);
                for (int i = 1; i <= n; ++i) {
                    out[i] += f[0] * rlfd_correction(static_cast<double>(i) * h, alpha, g1);
                }
                out.left_singular = true; // (x-a)^(-alpha) diverges at x_0
            }
            return out;
        }
        case OperatorKind::RightRLFD: {
            if (order.classical()) {
                auto v = classical_derivative(f);
                for (double& x : v) x = -x;
                return SampledFunction(f.grid, std::move(v));
            }
            auto v = apply_right_cfd(f, alpha);
            SampledFunction out(f.grid, std::move(v));
            if (f[n] != 0.0) {
                const double g1 = gamma(1.0 - alpha);
                for (int i = 0; i < n; ++i) {
                    out[i] += f[n] * rlfd_correction(static_cast<double>(n - i) * h, alpha, g1);
                }
                out.right_singular = true;
            }
            return out;
        }
    }
    throw DomainError("unknown operator kind");
}

SampledFunction left_rlfi(const SampledFunction& f, FractionalOrder alpha) {
    return apply_operator(OperatorKind::LeftRLFI, f, alpha);
}
SampledFunction right_rlfi(const SampledFunction& f, FractionalOrder alpha) {
    return apply_operator(OperatorKind::RightRLFI, f, alpha);
}
SampledFunction left_cfd(const SampledFunction& f, FractionalOrder alpha) {
    return apply_operator(OperatorKind::LeftCFD, f, alpha);
}
SampledFunction right_cfd(const SampledFunction& f, FractionalOrder alpha) {
    return apply_operator(OperatorKind::RightCFD, f, alpha);
}
SampledFunction left_rlfd(const SampledFunction& f, FractionalOrder alpha) {
    return apply_operator(OperatorKind::LeftRLFD, f, alpha);
}
SampledFunction right_rlfd(const SampledFunction& f, FractionalOrder alpha) {
    return apply_operator(OperatorKind::RightRLFD, f, alpha);
}

// ---------------------------------------------------------------------------
// OperatorMatrix
// ---------------------------------------------------------------------------

OperatorMatrix::OperatorMatrix(OperatorKind kind, FractionalOrder order, const Grid& grid)
    : kind_(kind), order_(order), grid_(grid) {
    const int n = grid.n();
    const std::size_t nn = static_cast<std::size_t>(grid.num_nodes());
    const double h = grid.h();
    const double alpha = order.value();
    entries_.assign(nn * nn, 0.0);
    auto at = [&](int i, int j) -> double& {
        return entries_[static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(j)];
    };

    const bool classical = order.classical();
    const bool derivative_kind = kind != OperatorKind::LeftRLFI && kind != OperatorKind::RightRLFI;

    if (classical && derivative_kind) {
        const double sign =
            (kind == OperatorKind::RightCFD || kind == OperatorKind::RightRLFD) ? -1.0 : 1.0;
        at(0, 0) = -sign / h;
        at(0, 1) = sign / h;
        for (int i = 1; i < n; ++i) {
            at(i, i - 1) = -sign / (2.0 * h);
            at(i, i + 1) = sign / (2.0 * h);
        }
        at(n, n - 1) = -sign / h;
        at(n, n) = sign / h;
        return;
    }

    if (classical) { // plain running integrals
        if (kind == OperatorKind::LeftRLFI) {
            for (int m = 1; m <= n; ++m) {
                at(m, 0) = 0.5 * h;
                for (int j = 1; j < m; ++j) at(m, j) = h;
                at(m, m) = 0.5 * h;
            }
        } else {
            for (int k = 0; k < n; ++k) {
                at(k, k) = 0.5 * h;
                for (int j = k + 1; j < n; ++j) at(k, j) = h;
                at(k, n) = 0.5 * h;
            }
        }
        return;
    }

    switch (kind) {
        case OperatorKind::LeftRLFI: {
            const RlfiWeightTable w(n, alpha, h);
            for (int m = 1; m <= n; ++m)
                for (int j = 0; j <= m; ++j) at(m, j) = w.weight(j, m);
            break;
        }
        case OperatorKind::RightRLFI: {
            const RlfiWeightTable w(n, alpha, h);
            for (int k = 0; k < n; ++k) {
                const int m = n - k;
                for (int j = k; j <= n; ++j) at(k, j) = w.weight(m - (j - k), m);
            }
            break;
        }
        case OperatorKind::LeftCFD:
        case OperatorKind::LeftRLFD: {
            const double s = std::pow(h, -alpha) / gamma(2.0 - alpha);
            const std::vector<double> d = l1_diff_weights(n, alpha);
            for (int k = 1; k <= n; ++k) {
                at(k, 0) = -s * d[static_cast<std::size_t>(k)];
                for (int j = 1; j < k; ++j) {
                    at(k, j) = s * (d[static_cast<std::size_t>(k - j + 1)] -
                                    d[static_cast<std::size_t>(k - j)]);
                }
                at(k, k) = s;
            }
            if (kind == OperatorKind::LeftRLFD) {
                // Regular part of the boundary correction; the anchored end
                // node itself stays untouched (genuinely singular there).
                const double g1 = gamma(1.0 - alpha);
                for (int i = 1; i <= n; ++i) {
                    at(i, 0) += rlfd_correction(static_cast<double>(i) * h, alpha, g1);
                }
            }
            break;
        }
        case OperatorKind::RightCFD:
        case OperatorKind::RightRLFD: {
            const double s = std::pow(h, -alpha) / gamma(2.0 - alpha);
            const std::vector<double> d = l1_diff_weights(n, alpha);
            for (int k = 0; k < n; ++k) {
                at(k, k) = s;
                for (int j = k + 1; j < n; ++j) {
                    at(k, j) = s * (d[static_cast<std::size_t>(j - k + 1)] -
                                    d[static_cast<std::size_t>(j - k)]);
                }
                at(k, n) = -s * d[static_cast<std::size_t>(n - k)];
            }
            if (kind == OperatorKind::RightRLFD) {
                const double g1 = gamma(1.0 - alpha);
                for (int i = 0; i < n; ++i) {
                    at(i, n) += rlfd_correction(static_cast<double>(n - i) * h, alpha, g1);
                }
            }
            break;
        }
    }
}

SampledFunction OperatorMatrix::apply(const SampledFunction& f) const {
    if (!(f.grid == grid_)) {
        throw ShapeError("operator matrix and function live on different grids");
    }
    return apply_operator(kind_, f, order_);
}

std::vector<double> OperatorMatrix::multiply_dense(std::span<const double> v) const {
    const std::size_t nn = static_cast<std::size_t>(grid_.num_nodes());
    if (v.size() != nn) {
        throw ShapeError("dense multiply: vector length does not match grid");
    }
    std::vector<double> out(nn, 0.0);
    for (std::size_t i = 0; i < nn; ++i) {
        const double* row = entries_.data() + i * nn;
        double acc = 0.0;
        for (std::size_t j = 0; j < nn; ++j) acc += row[j] * v[j];
        out[i] = acc;
    }
    return out;
}

std::vector<double> OperatorMatrix::apply_transpose(std::span<const double> w) const {
    const int n = grid_.n();
    const std::size_t nn = static_cast<std::size_t>(grid_.num_nodes());
    if (w.size() != nn) {
        throw ShapeError("transpose multiply: vector length does not match grid");
    }

    const bool derivative_kind = kind_ != OperatorKind::LeftRLFI && kind_ != OperatorKind::RightRLFI;
    if (order_.classical() && derivative_kind) {
        const double h = grid_.h();
        const double sign =
            (kind_ == OperatorKind::RightCFD || kind_ == OperatorKind::RightRLFD) ? -1.0 : 1.0;
        std::vector<double> out(nn, 0.0);
        out[0] += -w[0] / h;
        out[1] += w[0] / h;
        for (int i = 1; i < n; ++i) {
            out[static_cast<std::size_t>(i - 1)] -= w[static_cast<std::size_t>(i)] / (2.0 * h);
            out[static_cast<std::size_t>(i + 1)] += w[static_cast<std::size_t>(i)] / (2.0 * h);
        }
        out[static_cast<std::size_t>(n - 1)] -= w[static_cast<std::size_t>(n)] / h;
        out[static_cast<std::size_t>(n)] += w[static_cast<std::size_t>(n)] / h;
        if (sign < 0.0) {
            for (double& x : out) x = -x;
        }
        return out;
    }

    std::vector<double> out(nn, 0.0);
    for (std::size_t i = 0; i < nn; ++i) {
        const double wi = w[i];
        if (wi == 0.0) continue;
        const double* row = entries_.data() + i * nn;
        for (std::size_t j = 0; j < nn; ++j) out[j] += wi * row[j];
    }
    return out;
}

OperatorMatrix operator_matrix(OperatorKind kind, FractionalOrder order, const Grid& grid) {
    return OperatorMatrix(kind, order, grid);
}

// ---------------------------------------------------------------------------
// Integration-by-parts residuals
// ---------------------------------------------------------------------------

namespace {

SampledFunction pointwise_product(const SampledFunction& f, const SampledFunction& g) {
    std::vector<double> v(static_cast<std::size_t>(f.grid.num_nodes()));
    for (int i = 0; i < f.size(); ++i) v[static_cast<std::size_t>(i)] = f[i] * g[i];
    return SampledFunction(f.grid, std::move(v));
}

} // namespace

double ibp_residual_rlfi(const SampledFunction& f, const SampledFunction& g, FractionalOrder alpha) {
    require_same_grid(f, g);
    const SampledFunction If = left_rlfi(f, alpha);
    const SampledFunction Ig = right_rlfi(g, alpha);
    const double lhs = trapezoid(pointwise_product(g, If));
    const double rhs = trapezoid(pointwise_product(f, Ig));
    return std::abs(lhs - rhs);
}

double ibp_residual_caputo(const SampledFunction& f, const SampledFunction& g,
                           FractionalOrder alpha, Side side) {
    require_same_grid(f, g);
    const int n = f.grid.n();
    const bool classical = alpha.classical();
    // Complementary order for the boundary terms; order 0 is the identity.
    const FractionalOrder comp(classical ? 1.0 : 1.0 - alpha.value());

    if (side == Side::Left) {
        const double lhs = trapezoid(pointwise_product(g, left_cfd(f, alpha)));
        double boundary;
        if (classical) {
            boundary = f[n] * g[n] - f[0] * g[0];
        } else {
            const SampledFunction Ig = right_rlfi(g, comp);
            boundary = f[n] * Ig[n] - f[0] * Ig[0];
        }
        // int f * (D_b^alpha g) split into Caputo part + power-kernel part.
        double integral = trapezoid(pointwise_product(f, right_cfd(g, alpha)));
        if (!classical && g[n] != 0.0) {
            integral += g[n] * left_rlfi(f, comp)[n];
        }
        return std::abs(lhs - (boundary + integral));
    }

    const double lhs = trapezoid(pointwise_product(g, right_cfd(f, alpha)));
    double boundary;
    if (classical) {
        boundary = -f[n] * g[n] + f[0] * g[0];
    } else {
        const SampledFunction Ig = left_rlfi(g, comp);
        boundary = -f[n] * Ig[n] + f[0] * Ig[0];
    }
    double integral = trapezoid(pointwise_product(f, left_cfd(g, alpha)));
    if (!classical && g[0] != 0.0) {
        integral += g[0] * right_rlfi(f, comp)[0];
    }
    return std::abs(lhs - (boundary + integral));
}

} // namespace fracvar
