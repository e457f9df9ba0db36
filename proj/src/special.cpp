#include "fracvar/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fracvar/errors.hpp"

namespace fracvar {

namespace {

// Lanczos coefficients for g = 7, 9 terms (the widely published set).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_gamma(double x) {
    if (x < 0.5) {
        // Reflection keeps the series argument in its accurate range.
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
    }
    x -= 1.0;
    double a = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        a += kLanczos[i] / (x + static_cast<double>(i));
    }
    const double t = x + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

} // namespace

double gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw DomainError("gamma requires a finite positive argument, got " + std::to_string(x));
    }
    return lanczos_gamma(x);
}

} // namespace fracvar
