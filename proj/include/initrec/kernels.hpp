#pragma once

// Scalar exponential-weight integrals that diagonalize the observation
// operators in the eigenbasis, plus the Beta function used by the
// contraction bounds.

#include "initrec/spectral.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace initrec {

/// Relative tolerance below which a diagonal denominator counts as zero.
inline constexpr double kSpectralTolerance = 1e-10;

/// Time weight b(t) on [0, T].
class WeightFunction {
public:
    struct Constant {
        double value = 0.0;
    };
    /// b(t) = sum_k coeffs[k] t^k.
    struct Polynomial {
        std::vector<double> coeffs;
    };
    /// Piecewise-linear interpolation of (t, b) samples.
    struct Tabulated {
        std::vector<double> t;
        std::vector<double> b;
    };
    using Representation = std::variant<Constant, Polynomial, Tabulated>;

    static WeightFunction constant(double value);
    static WeightFunction polynomial(std::vector<double> coeffs);
    /// Throws InvalidInput unless nodes are strictly increasing and sizes match.
    static WeightFunction tabulated(std::vector<double> t, std::vector<double> b);

    double operator()(double t) const;
    double value_at_zero() const { return (*this)(0.0); }

    /// True when b >= 0 is guaranteed on [0, inf): a nonnegative constant,
    /// a polynomial with nonnegative coefficients, or a table of nonnegative values.
    bool sign_certificate() const noexcept { return sign_certificate_; }
    bool identically_zero() const noexcept;
    std::optional<double> constant_value() const noexcept;

    const Representation& representation() const noexcept { return repr_; }
    std::uint64_t identity_hash() const noexcept;

    /// Throws InvalidInput if a table does not cover [0, T].
    void check_covers(double final_time) const;

private:
    explicit WeightFunction(Representation repr);

    Representation repr_;
    bool sign_certificate_ = false;
};

/// int_0^1 s^k e^{z s} ds, evaluated without cancellation for any real z.
double exp_moment(unsigned k, double z);

/// int_0^T b(t) e^{t lambda} dt.
double exp_weight_integral(double lambda, double final_time, const WeightFunction& b);

/// int_s^T b(t) e^{(t - s) lambda} dt; zero at s = T.
double tail_weight(double lambda, double s, double final_time, const WeightFunction& b);

/// int_0^T |b(t)| e^{t lambda} dt, the scale of the ill-posedness test.
double abs_exp_weight_integral(double lambda, double final_time, const WeightFunction& b);

/// Per-mode diagonals of the observation operators for weight (a, b).
struct ModeWeights {
    double final_time = 0.0;
    double a = 0.0;
    WeightFunction b = WeightFunction::constant(0.0);
    std::uint64_t weight_hash = 0;
    std::vector<double> eigenvalues;
    /// beta_j = a e^{T lambda_j} + phi0_j
    std::vector<double> beta;
    /// phi0_j = int_0^T b(t) e^{t lambda_j} dt
    std::vector<double> phi0;
    /// |a| e^{T lambda_j} + int_0^T |b| e^{t lambda_j} dt
    std::vector<double> scale;
    /// k_j = 1 - b e^{T lambda_j}; only for constant b.
    std::optional<std::vector<double>> k;
};

/// Propagates NumericFailure with the offending (1-based) mode.
ModeWeights mode_weights(const SpectralOperator& op, double a, const WeightFunction& b,
                         double final_time);

/// mu_j = 1 / beta_j. Throws IllPosedMode listing every j with
/// |beta_j| <= kSpectralTolerance * scale_j.
std::vector<double> phi_T_inverse_diagonal(const ModeWeights& w);

/// B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y) via log-gamma.
double beta_function(double x, double y);

}  // namespace initrec
