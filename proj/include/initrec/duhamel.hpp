#pragma once

// Mild solutions u(t) = e^{tA} u0 + int_0^t e^{(t-s)A} f(u)(s) ds, mode by mode.

#include "initrec/kernels.hpp"
#include "initrec/nonlinearity.hpp"
#include "initrec/phi.hpp"
#include "initrec/spectral.hpp"

#include <span>
#include <vector>

namespace initrec {

/// Per-interval, per-mode coefficients of the exponential trapezoid
///   v_{i+1} = decay * v_i + h (phi1 - phi2) g_i + h phi2 g_{i+1},
/// which is exact for g piecewise linear in t.
class ExponentialStepper {
public:
    ExponentialStepper(const SpectralOperator& op, const TimeGrid& grid);

    double decay(std::size_t i, std::size_t j) const { return decay_[i * modes_ + j]; }
    double weight_left(std::size_t i, std::size_t j) const { return left_[i * modes_ + j]; }
    double weight_right(std::size_t i, std::size_t j) const { return right_[i * modes_ + j]; }

private:
    std::size_t modes_;
    std::vector<double> decay_, left_, right_;
};

/// v(t_i) = int_0^{t_i} e^{(t_i - s)A} g(s) ds with g linear between nodes.
/// An unpopulated g(t_0) is taken from g(t_1).
Trajectory duhamel_convolve(const SpectralOperator& op, const Trajectory& g);
/// Same, after checking that g lives on `grid`.
Trajectory duhamel_convolve(const SpectralOperator& op, const Trajectory& g,
                            const TimeGrid& grid);

struct ForwardOptions {
    int max_corrector_iterations = 25;
    double corrector_rel_tol = 1e-14;
};

/// Marches the Duhamel identity with a predictor (exponential Euler) and a
/// fixed-point corrector (exponential trapezoid) per step. The homogeneous
/// part is evaluated in closed form, so f = Zero returns e^{t_i A} u0 exactly.
/// Throws NumericFailure carrying the step index if a corrector fails to settle.
Trajectory forward_solve(const SpectralOperator& op, std::span<const double> u0,
                         const Nonlinearity& f, const TimeGrid& grid,
                         const ForwardOptions& options = {});

/// M = a u(T) + trapezoid sum of b(t_i) u(t_i) over the trajectory's own grid.
std::vector<double> observe(const Trajectory& u, double a, const WeightFunction& b);

}  // namespace initrec
