#pragma once

// Test-side oracles, independent of the library's discretizations: adaptive
// quadrature for the defining integrals of the fractional operators (with
// the kernel singularity removed by substitution) and a full
// finite-difference gradient of the discretized functional.

#include <functional>
#include <vector>

#include "fracvar/problem.hpp"

namespace oracles {

using RealFn = std::function<double(double)>;

// Recursive adaptive Simpson on [a, b] to absolute tolerance tol.
double adaptive_simpson(const RealFn& f, double a, double b, double tol);

// (1/Gamma(alpha)) int_a^x (x-t)^(alpha-1) f(t) dt, computed after the
// substitution u = (x-t)^alpha which removes the kernel singularity.
double left_rlfi(const RealFn& f, double a, double x, double alpha);

// (1/Gamma(alpha)) int_x^b (t-x)^(alpha-1) f(t) dt.
double right_rlfi(const RealFn& f, double b, double x, double alpha);

// (1/Gamma(1-alpha)) int_a^x (x-t)^(-alpha) f'(t) dt from the analytic f'.
double left_cfd(const RealFn& fprime, double a, double x, double alpha);

// (-1/Gamma(1-alpha)) int_x^b (t-x)^(-alpha) f'(t) dt.
double right_cfd(const RealFn& fprime, double b, double x, double alpha);

// Full finite-difference gradient of the discretized functional, probing
// every coordinate of y (fixed end nodes included; evaluation bypasses the
// boundary projection so the probe is well defined there).
std::vector<double> fd_gradient(const fracvar::Problem& p, const fracvar::SampledFunction& y,
                                bool one_sided);

// Observed order from errors on grids n and 2n.
double observed_order(double err_coarse, double err_fine);

} // namespace oracles
