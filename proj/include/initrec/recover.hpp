#pragma once

// Recovery of u(0) from nonlocal-in-time observations. Every problem is
// reduced to u(0) = Sigma_T(u) and solved by Picard iteration of
//   Lambda(u)(t) = e^{tA} Sigma_T(u) + int_0^t e^{(t-s)A} f(u)(s) ds.

#include "initrec/duhamel.hpp"
#include "initrec/kernels.hpp"
#include "initrec/nonlinearity.hpp"
#include "initrec/spectral.hpp"

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace initrec {

/// a u(T) + int_0^T b(t) u(t) dt = M, with b(0) != 0.
struct ConditionE {
    double a = 0.0;
    WeightFunction b = WeightFunction::constant(1.0);
    std::vector<double> M;
};

/// u(0) - b u(T) = M, with scalar b != 0.
struct ConditionE100 {
    double b = 1.0;
    std::vector<double> M;
};

/// u(0) + int_0^T b(t) u(t) dt = M, with b not identically zero.
struct ConditionE200 {
    WeightFunction b = WeightFunction::constant(1.0);
    std::vector<double> M;
};

using NonlocalCondition = std::variant<ConditionE, ConditionE100, ConditionE200>;

std::string_view problem_tag(const NonlocalCondition& cond) noexcept;
const std::vector<double>& observation(const NonlocalCondition& cond) noexcept;
NonlocalCondition with_observation(NonlocalCondition cond, std::vector<double> M);

/// Throws InvalidParameter on a violated invariant and InvalidInput when M
/// does not have one entry per mode.
void validate(const NonlocalCondition& cond, const SpectralOperator& op);

/// The observation functional applied to a computed trajectory, by the
/// trapezoid rule on the trajectory's own grid.
std::vector<double> observe_condition(const Trajectory& u, const NonlocalCondition& cond);

/// Weights w^L, w^R with int_0^T g_j(s) K_j(s) ds = sum_k w^L_kj g_kj + w^R_kj g_{k+1,j}
/// for g piecewise linear on the grid and the kernel
///   K_j(s) = kernel_scale e^{(T-s) lambda_j} + int_s^T b(t) e^{(t-s) lambda_j} dt
/// (tail term omitted when `tail` is null).
class PsiWeights {
public:
    PsiWeights(const SpectralOperator& op, const TimeGrid& grid, double kernel_scale,
               const WeightFunction* tail);

    std::vector<double> apply(const Trajectory& g) const;
    /// max_j sum_k (|w^L_kj| + |w^R_kj|) / |d_j|: bound on the sup-to-E_0
    /// Lipschitz constant of g -> (Psi g)_j / d_j.
    double scaled_bound(std::span<const double> denominators) const;

private:
    TimeGrid grid_;
    std::size_t modes_;
    std::vector<double> left_, right_;
};

/// (Psi_T g)_j = int_0^T g_j(s) [a e^{(T-s) lambda_j} + tail_weight(lambda_j, s, T, b)] ds.
std::vector<double> apply_psi_E(double a, const WeightFunction& b, double final_time,
                                const Trajectory& g, const SpectralOperator& op);

/// (M_j - (Psi_T g)_j) / beta_j.
std::vector<double> sigma_E(const ModeWeights& w, std::span<const double> M,
                            const Trajectory& g, const SpectralOperator& op);
/// (M_j + b int_0^T e^{(T-s) lambda_j} g_j(s) ds) / (1 - b e^{T lambda_j}).
std::vector<double> sigma_E100(double b, double final_time, std::span<const double> M,
                               const Trajectory& g, const SpectralOperator& op);
/// (M_j - int_0^T g_j(s) tail_weight(lambda_j, s, T, b) ds) / (1 + phi0_j).
std::vector<double> sigma_E200(const WeightFunction& b, double final_time,
                               std::span<const double> M, const Trajectory& g,
                               const SpectralOperator& op);

struct SpectralReport {
    std::string problem;
    double tolerance = kSpectralTolerance;
    /// Diagonal denominator per mode: beta_j, k_j or 1 + phi0_j.
    std::vector<double> denominator;
    std::vector<double> scale;
    /// |denominator_j| / scale_j.
    std::vector<double> margin;
    /// 1-based modes with margin <= tolerance.
    std::vector<std::size_t> violating;
    bool pass = true;
};

SpectralReport check_spectral_condition(const SpectralOperator& op,
                                        const NonlocalCondition& cond, double final_time,
                                        double tol = kSpectralTolerance);

/// g -> Sigma_T for a fixed condition and grid, with all weights precomputed.
/// Throws IllPosedMode when the spectral check fails.
class SigmaMap {
public:
    SigmaMap(const SpectralOperator& op, const NonlocalCondition& cond, const TimeGrid& grid,
             double spectral_tol = kSpectralTolerance);

    std::vector<double> operator()(const Trajectory& g) const;
    std::vector<double> operator()(const Trajectory& g, std::span<const double> M) const;

    const SpectralReport& spectral() const noexcept { return report_; }
    /// Bound on the Lipschitz constant of g -> Sigma_T from sup-E_0 to E_0.
    double lipschitz_bound() const { return psi_.scaled_bound(report_.denominator); }

private:
    NonlocalCondition cond_;
    SpectralReport report_;
    PsiWeights psi_;
    double psi_sign_;
};

/// T * max_j |mu_j| / (delta0 - lambda_j): the constant c in
/// ||Phi_T^{-1}||_{L(E_1, E_0)} <= c / T for problem E.
double small_time_constant(const SpectralOperator& op, const ModeWeights& w,
                           const FractionalNormSpec& spec);

struct WellPosednessEstimate {
    double omega_T = 1.0;
    double gamma0 = 0.0;
    double beta_value = 1.0;
    double c_hat = 0.0;
    double final_time = 0.0;
    NonlinearityExponents exponents;
    double L_star = 0.0;
    double m_T = 0.0;
    /// Set when c_hat == 0: no smallness needed, m_T is +inf.
    bool unbounded = false;

    /// omega_T c_hat L^ell [1 + T^{1 + gamma0 - nu} beta_value].
    double contraction_factor(double L) const;
};

/// Throws InvalidParameter unless gamma in [0,1], theta in (0,1],
/// (gamma, theta) != (0, 1) and nu in [0, 1).
void validate_exponents(const NonlinearityExponents& e);

/// gamma0 = min(gamma, theta) / 2, or 0 when gamma = 0.
double auxiliary_exponent(const NonlinearityExponents& e) noexcept;

/// Estimate of omega(T) bounding ||e^{tA}||_{L(E_th)} + t^{a - b0} ||e^{tA}||_{L(E_b, E_a)}
/// for (a, b, b0) in {(theta, 0, 0), (theta, gamma, gamma0)}. Closed form when
/// delta0 = 0 and alpha <= 0, otherwise a log-grid sup inflated by 5%.
double semigroup_constant(const SpectralOperator& op, const NonlinearityExponents& e,
                          double gamma0, double final_time, const FractionalNormSpec& spec);

/// L_star = largest L in (0, 1] with contraction_factor(L) <= 1/2 (bisection)
/// and m_T = L_star / (4 omega).
WellPosednessEstimate solve_threshold(double omega, double c_hat, double ell,
                                      double final_time, double gamma0, double theta,
                                      double nu);

WellPosednessEstimate theoretical_threshold(const SpectralOperator& op,
                                            const NonlinearityExponents& e, double c_hat,
                                            double final_time, const FractionalNormSpec& spec);

struct PicardOptions {
    double tol = 1e-10;
    std::size_t max_iter = 200;
    /// Starting iterate; u ≡ 0 when unset.
    std::optional<Trajectory> initial;
    /// Permit f(0) != 0 for problem E with a = 0 (warns instead of rejecting).
    bool small_time = false;
    double spectral_tol = kSpectralTolerance;
    /// Attach a theoretical threshold estimate to the report.
    std::optional<WellPosednessEstimate> threshold;
};

struct FixedPointReport {
    std::size_t iterations = 0;
    std::vector<double> residual_weighted;
    std::vector<double> residual_sup;
    std::vector<double> contraction_ratios;
    bool converged = false;
    std::vector<double> u0_recovered;
    double sigma_T0_norm = 0.0;
    std::optional<double> threshold_m;
    std::optional<double> small_time_constant;
    std::vector<std::string> warnings;
    std::optional<Trajectory> solution;
};

FixedPointReport picard_recover(const SpectralOperator& op, const NonlocalCondition& cond,
                                const Nonlinearity& f, const TimeGrid& grid,
                                const FractionalNormSpec& spec, const PicardOptions& options);

FixedPointReport picard_recover(const SpectralOperator& op, const NonlocalCondition& cond,
                                const Nonlinearity& f, const TimeGrid& grid,
                                const FractionalNormSpec& spec, double tol = 1e-10,
                                std::size_t max_iter = 200);

struct ThresholdInputs {
    std::size_t growth_samples = 400;
    double amplitude_lo = 1e-4;
    double amplitude_hi = 1.0;
    std::uint64_t seed = 0;
};

/// Empirical growth constant of f (times the memory-kernel time factor and
/// the Lipschitz bound of Sigma_T, when those exceed one) fed into
/// theoretical_threshold with the exponents declared by f.
WellPosednessEstimate estimate_threshold(const SpectralOperator& op,
                                         const NonlocalCondition& cond, const Nonlinearity& f,
                                         const TimeGrid& grid, const FractionalNormSpec& spec,
                                         double gamma = 0.0, std::optional<double> nu = {},
                                         const ThresholdInputs& inputs = {});

}  // namespace initrec
