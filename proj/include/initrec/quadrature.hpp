#pragma once

#include <array>
#include <functional>

namespace initrec {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Fixed 15-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre15 {
    static constexpr int points = 15;
    std::array<double, points> nodes{};
    std::array<double, points> weights{};

    static const GaussLegendre15& instance();

    /// Single panel over [a, b].
    double integrate(const std::function<double(double)>& f, double a, double b) const;
};

/// Adaptive Gauss-Legendre with 15-point panels and bisection. A panel is
/// accepted once its value agrees with the sum of its halves to the panel's
/// share of rel_tol * integral(|f|). Throws NumericFailure (carrying the
/// achieved error estimate) when a panel cannot be resolved within max_depth
/// bisections.
QuadratureResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a,
                                         double b, double rel_tol = 1e-12, int max_depth = 48);

}  // namespace initrec
