#include "initrec/error.hpp"
#include "initrec/recover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace initrec {

namespace {

// sup_{x >= 0} x^p e^{-x} = (p/e)^p, with 0^0 = 1.
double power_exp_sup(double p)
{
    return p == 0.0 ? 1.0 : std::pow(p / std::exp(1.0), p);
}

}  // namespace

double WellPosednessEstimate::contraction_factor(double L) const
{
    const double bracket =
        1.0 + std::pow(final_time, 1.0 + gamma0 - exponents.nu) * beta_value;
    return omega_T * c_hat * std::pow(L, exponents.ell) * bracket;
}

void validate_exponents(const NonlinearityExponents& e)
{
    require(e.gamma >= 0.0 && e.gamma <= 1.0, ErrorKind::InvalidParameter,
            "gamma must lie in [0, 1]");
    require(e.theta > 0.0 && e.theta <= 1.0, ErrorKind::InvalidParameter,
            "theta must lie in (0, 1]");
    require(!(e.gamma == 0.0 && e.theta == 1.0), ErrorKind::InvalidParameter,
            "(gamma, theta) = (0, 1) is excluded");
    require(e.nu >= 0.0 && e.nu < 1.0, ErrorKind::InvalidParameter, "nu must lie in [0, 1)");
    require(e.ell > 0.0, ErrorKind::InvalidParameter, "ell must be positive");
}

double auxiliary_exponent(const NonlinearityExponents& e) noexcept
{
    return e.gamma > 0.0 ? 0.5 * std::min(e.gamma, e.theta) : 0.0;
}

double semigroup_constant(const SpectralOperator& op, const NonlinearityExponents& e,
                          double gamma0, double final_time, const FractionalNormSpec& spec)
{
    spec.validate(op);
    require(final_time > 0.0, ErrorKind::InvalidParameter, "T must be positive");
    struct Triple {
        double a, b, b0;
    };
    const Triple triples[] = {{e.theta, 0.0, 0.0}, {e.theta, e.gamma, gamma0}};

    const bool closed_form = spec.delta0 == 0.0 && op.upper_bound() <= 0.0 &&
                             e.gamma <= e.theta;
    if (closed_form) {
        // ||e^{tA}||_{L(E_th)} <= 1 and t^{a-b0} sup_x x^{a-b} e^{-tx} = t^{b-b0} ((a-b)/e)^{a-b}.
        double omega = 1.0;
        for (const auto& tr : triples)
            omega = std::max(omega, 1.0 + std::pow(final_time, tr.b - tr.b0) *
                                              power_exp_sup(tr.a - tr.b));
        return omega;
    }

    constexpr int samples = 600;
    const double log_lo = std::log(final_time) - 12.0 * std::log(10.0);
    const double log_hi = std::log(final_time);
    double omega = 1.0;
    for (int s = 0; s <= samples; ++s) {
        const double t = s == samples ? final_time
                                      : std::exp(log_lo + (log_hi - log_lo) * s / samples);
        double semigroup = 0.0;
        for (std::size_t j = 0; j < op.mode_count(); ++j)
            semigroup = std::max(semigroup, std::exp(t * op.eigenvalue(j)));
        for (const auto& tr : triples) {
            double smoothing = 0.0;
            for (std::size_t j = 0; j < op.mode_count(); ++j) {
                const double lam = op.eigenvalue(j);
                smoothing = std::max(smoothing, std::pow(spec.delta0 - lam, tr.a - tr.b) *
                                                    std::exp(t * lam));
            }
            omega = std::max(omega, semigroup + std::pow(t, tr.a - tr.b0) * smoothing);
        }
    }
    return 1.05 * omega;
}

WellPosednessEstimate solve_threshold(double omega, double c_hat, double ell,
                                      double final_time, double gamma0, double theta,
                                      double nu)
{
    require(omega > 0.0 && std::isfinite(omega), ErrorKind::InvalidParameter,
            "omega must be positive");
    require(c_hat >= 0.0 && std::isfinite(c_hat), ErrorKind::InvalidParameter,
            "growth constant must be finite and nonnegative");
    require(ell > 0.0, ErrorKind::InvalidParameter, "ell must be positive");
    require(final_time > 0.0, ErrorKind::InvalidParameter, "T must be positive");
    require(1.0 + gamma0 - theta > 0.0 && nu < 1.0, ErrorKind::InvalidParameter,
            "Beta arguments must be positive");

    WellPosednessEstimate est;
    est.omega_T = omega;
    est.gamma0 = gamma0;
    est.c_hat = c_hat;
    est.final_time = final_time;
    est.exponents.theta = theta;
    est.exponents.nu = nu;
    est.exponents.ell = ell;
    est.beta_value = beta_function(1.0 + gamma0 - theta, 1.0 - nu);

    if (c_hat == 0.0) {
        est.unbounded = true;
        est.L_star = 1.0;
        est.m_T = std::numeric_limits<double>::infinity();
        return est;
    }
    if (est.contraction_factor(1.0) <= 0.5) {
        est.L_star = 1.0;
    } else {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (est.contraction_factor(mid) <= 0.5 ? lo : hi) = mid;
        }
        est.L_star = lo;
    }
    est.m_T = est.L_star / (4.0 * omega);
    return est;
}

WellPosednessEstimate theoretical_threshold(const SpectralOperator& op,
                                            const NonlinearityExponents& e, double c_hat,
                                            double final_time, const FractionalNormSpec& spec)
{
    validate_exponents(e);
    const double gamma0 = auxiliary_exponent(e);
    const double omega = semigroup_constant(op, e, gamma0, final_time, spec);
    auto est = solve_threshold(omega, c_hat, e.ell, final_time, gamma0, e.theta, e.nu);
    est.exponents = e;
    return est;
}

}  // namespace initrec
