#pragma once

#include "initrec/spectral.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace initrec {

/// Exponents (gamma, theta, nu, ell) under which a nonlinearity maps the
/// weighted space C_theta((0,T], E_theta) into C_nu((0,T], E_gamma).
struct NonlinearityExponents {
    double gamma = 0.0;
    double theta = 0.0;
    double nu = 0.0;
    double ell = 1.0;
};

struct ZeroNonlinearity {};

/// g(u) = kappa |u|^ell u, pointwise in x.
struct PowerLaw {
    double kappa = 1.0;
    double ell = 1.0;
};

/// f(u)(t) = int_0^t c (t - s)^lambda_exp |u(s)|^ell u(s) ds, pointwise in x.
struct MemoryKernel {
    double c = 1.0;
    double lambda_exp = 0.0;
    double ell = 1.0;
    /// Declared time-weight exponent; derived from the admissibility
    /// inequality when unset.
    std::optional<double> nu;
};

/// Arbitrary pointwise map v -> g(v). Library-only (not reachable from
/// configs); g(0) != 0 is allowed and is what the small-T mode handles.
struct PointwiseNonlinearity {
    std::function<double(double)> g;
    double ell = 1.0;
    std::string name = "pointwise";
};

using Nonlinearity = std::variant<ZeroNonlinearity, PowerLaw, MemoryKernel, PointwiseNonlinearity>;

/// Throws InvalidParameter for ell <= 0 or lambda_exp <= -1.
void validate(const Nonlinearity& f);

std::string describe(const Nonlinearity& f);

NonlinearityExponents declared_exponents(const Nonlinearity& f, double theta);

/// kappa |v|^ell v.
double power_law_pointwise(double kappa, double ell, double v) noexcept;

Trajectory eval_local(const PowerLaw& f, const Trajectory& u, const SpectralOperator& op);
Trajectory eval_pointwise(const PointwiseNonlinearity& f, const Trajectory& u,
                          const SpectralOperator& op);
Trajectory eval_memory_kernel(const MemoryKernel& f, const Trajectory& u,
                              const SpectralOperator& op);

/// Dispatches on the variant. The result always has its t_0 slot populated.
Trajectory evaluate(const Nonlinearity& f, const Trajectory& u, const SpectralOperator& op);

/// The instantaneous state map v -> g(v) in coefficient space. For the memory
/// kernel this is the integrand c |v|^ell v with the time factor removed.
std::vector<double> evaluate_state(const Nonlinearity& f, std::span<const double> c,
                                   const SpectralOperator& op);

/// True when the state map sends 0 to 0.
bool vanishes_at_zero(const Nonlinearity& f, const SpectralOperator& op);

/// Product-trapezoid weights for int_0^{t_i} (t_i - s)^lambda q(s) ds with q
/// piecewise linear on the grid: the integral is
/// sum_{k<i} lower(i,k) q_k + upper(i,k) q_{k+1}. Moments of the singular
/// factor are integrated exactly on the interval adjacent to t_i.
class MemoryQuadrature {
public:
    MemoryQuadrature(const TimeGrid& grid, double lambda_exp);

    double lower(std::size_t i, std::size_t k) const { return lower_[offset(i) + k]; }
    double upper(std::size_t i, std::size_t k) const { return upper_[offset(i) + k]; }

private:
    static std::size_t offset(std::size_t i) { return i * (i - 1) / 2; }

    std::vector<double> lower_;
    std::vector<double> upper_;
};

struct GrowthCheck {
    /// Largest sampled ratio ||f(v)-f(w)||_0 / ((||v||_th^l + ||w||_th^l) ||v-w||_th).
    double c_hat = 0.0;
    bool pass = true;
    std::size_t samples = 0;
    std::size_t skipped = 0;
};

/// Empirical lower bound on the growth constant over random pairs with
/// E_0 amplitudes log-uniform in [amplitude_lo, amplitude_hi]. Fails only on
/// non-finite ratios. Requires sample_count >= 100.
GrowthCheck check_growth_condition(const Nonlinearity& f, const SpectralOperator& op,
                                   std::size_t sample_count, double amplitude_lo,
                                   double amplitude_hi, const FractionalNormSpec& spec,
                                   std::uint64_t seed = 0);

struct KernelAdmissibility {
    bool pass = true;
    std::vector<std::string> violated;
};

inline constexpr const char* kKernelIntegrable = "lambda>-1";
inline constexpr const char* kKernelSubcritical = "theta(ell+1)<1";
inline constexpr const char* kKernelWeight = "1+nu+lambda>theta(ell+1)";

/// Conditions under which c (t-s)_+^lambda yields an admissible memory term.
KernelAdmissibility check_kernel_admissibility(double lambda_exp, double theta, double ell,
                                               double nu);

}  // namespace initrec
