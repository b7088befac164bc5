#include "initrec/nonlinearity.hpp"

#include "initrec/error.hpp"
#include "initrec/quadrature.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace initrec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Applies a pointwise map to every populated node, through physical space.
template <class Map>
Trajectory map_pointwise(const Trajectory& u, const SpectralOperator& op, Map&& g)
{
    require(u.mode_count() == op.mode_count(), ErrorKind::InvalidInput,
            "trajectory mode count does not match operator");
    Trajectory out(u.grid(), u.mode_count(), true);
    for (std::size_t i = 0; i < u.node_count(); ++i) {
        if (i == 0 && !u.includes_t0()) continue;
        auto v = synthesize(op, u.at(i));
        for (double& x : v) {
            x = g(x);
            if (!std::isfinite(x))
                throw NumericFailure("nonlinearity produced a non-finite value at node " +
                                         std::to_string(i),
                                     0.0, i);
        }
        const auto c = analyze(op, v);
        std::copy(c.begin(), c.end(), out.at(i).begin());
    }
    // One-sided value at t_0 when the input carries no data there.
    if (!u.includes_t0()) std::copy(out.at(1).begin(), out.at(1).end(), out.at(0).begin());
    return out;
}

}  // namespace

void validate(const Nonlinearity& f)
{
    std::visit(overloaded{
                   [](const ZeroNonlinearity&) {},
                   [](const PowerLaw& p) {
                       require(p.ell > 0.0 && std::isfinite(p.kappa), ErrorKind::InvalidParameter,
                               "power law needs ell > 0 and finite kappa");
                   },
                   [](const MemoryKernel& m) {
                       require(m.ell > 0.0, ErrorKind::InvalidParameter,
                               "memory kernel needs ell > 0");
                       require(m.lambda_exp > -1.0, ErrorKind::InvalidParameter,
                               "memory kernel exponent must exceed -1");
                       require(std::isfinite(m.c), ErrorKind::InvalidParameter,
                               "memory kernel strength must be finite");
                   },
                   [](const PointwiseNonlinearity& p) {
                       require(static_cast<bool>(p.g), ErrorKind::InvalidParameter,
                               "pointwise nonlinearity has no function");
                       require(p.ell > 0.0, ErrorKind::InvalidParameter,
                               "pointwise nonlinearity needs ell > 0");
                   },
               },
               f);
}

std::string describe(const Nonlinearity& f)
{
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const ZeroNonlinearity&) { os << "zero"; },
                   [&](const PowerLaw& p) { os << "power(kappa=" << p.kappa << ", ell=" << p.ell << ")"; },
                   [&](const MemoryKernel& m) {
                       os << "memory(c=" << m.c << ", lambda=" << m.lambda_exp << ", ell=" << m.ell
                          << ")";
                   },
                   [&](const PointwiseNonlinearity& p) { os << p.name; },
               },
               f);
    return os.str();
}

NonlinearityExponents declared_exponents(const Nonlinearity& f, double theta)
{
    return std::visit(
        overloaded{
            [&](const ZeroNonlinearity&) { return NonlinearityExponents{0.0, theta, 0.0, 1.0}; },
            [&](const PowerLaw& p) {
                return NonlinearityExponents{0.0, theta, theta * (p.ell + 1.0), p.ell};
            },
            [&](const MemoryKernel& m) {
                double nu = 0.0;
                if (m.nu) {
                    nu = *m.nu;
                } else {
                    const double lower = theta * (m.ell + 1.0) - 1.0 - m.lambda_exp;
                    nu = lower < 0.0 ? 0.0 : 0.5 * (lower + 1.0);
                }
                return NonlinearityExponents{0.0, theta, nu, m.ell};
            },
            [&](const PointwiseNonlinearity& p) {
                return NonlinearityExponents{0.0, theta, theta * (p.ell + 1.0), p.ell};
            },
        },
        f);
}

double power_law_pointwise(double kappa, double ell, double v) noexcept
{
    if (v == 0.0) return 0.0;
    const double a = std::abs(v);
    const double mag = ell == 1.0 ? a : std::pow(a, ell);
    return kappa * mag * v;
}

Trajectory eval_local(const PowerLaw& f, const Trajectory& u, const SpectralOperator& op)
{
    return map_pointwise(u, op, [&f](double v) { return power_law_pointwise(f.kappa, f.ell, v); });
}

Trajectory eval_pointwise(const PointwiseNonlinearity& f, const Trajectory& u,
                          const SpectralOperator& op)
{
    return map_pointwise(u, op, f.g);
}

MemoryQuadrature::MemoryQuadrature(const TimeGrid& grid, double lambda_exp)
{
    require(lambda_exp > -1.0, ErrorKind::InvalidParameter,
            "memory kernel exponent must exceed -1");
    const std::size_t n = grid.intervals();
    lower_.resize(n * (n + 1) / 2);
    upper_.resize(lower_.size());
    const double p = lambda_exp;
    const auto& gl = GaussLegendre15::instance();
    for (std::size_t i = 1; i <= n; ++i) {
        const double ti = grid[i];
        for (std::size_t k = 0; k < i; ++k) {
            const double h = grid[k + 1] - grid[k];
            double m0 = 0.0;  // int (t_i - s)^p ds
            double m1 = 0.0;  // int (s - t_k) (t_i - s)^p ds
            if (k + 1 == i) {
                m0 = std::pow(h, p + 1.0) / (p + 1.0);
                m1 = std::pow(h, p + 2.0) / ((p + 1.0) * (p + 2.0));
            } else {
                // Smooth integrand: the singularity sits at least one interval away.
                const double a = ti - grid[k];
                m0 = gl.integrate([&](double u) { return std::pow(a - u, p); }, 0.0, h);
                m1 = gl.integrate([&](double u) { return u * std::pow(a - u, p); }, 0.0, h);
            }
            lower_[offset(i) + k] = m0 - m1 / h;
            upper_[offset(i) + k] = m1 / h;
        }
    }
}

Trajectory eval_memory_kernel(const MemoryKernel& f, const Trajectory& u,
                              const SpectralOperator& op)
{
    validate(f);
    // Integrand q(s) = |u(s)|^ell u(s) in coefficient space; t_0 is
    // extrapolated from t_1 when unpopulated.
    const Trajectory q = eval_local(PowerLaw{1.0, f.ell}, u, op);
    const MemoryQuadrature quad(u.grid(), f.lambda_exp);
    const std::size_t modes = u.mode_count();
    Trajectory out(u.grid(), modes, true);
    for (std::size_t i = 1; i < u.node_count(); ++i) {
        auto row = out.at(i);
        for (std::size_t k = 0; k < i; ++k) {
            const double lo = f.c * quad.lower(i, k);
            const double hi = f.c * quad.upper(i, k);
            const auto qk = q.at(k);
            const auto qk1 = q.at(k + 1);
            for (std::size_t j = 0; j < modes; ++j) row[j] += lo * qk[j] + hi * qk1[j];
        }
    }
    return out;
}

Trajectory evaluate(const Nonlinearity& f, const Trajectory& u, const SpectralOperator& op)
{
    return std::visit(overloaded{
                          [&](const ZeroNonlinearity&) {
                              return Trajectory(u.grid(), u.mode_count(), true);
                          },
                          [&](const PowerLaw& p) { return eval_local(p, u, op); },
                          [&](const MemoryKernel& m) { return eval_memory_kernel(m, u, op); },
                          [&](const PointwiseNonlinearity& p) { return eval_pointwise(p, u, op); },
                      },
                      f);
}

std::vector<double> evaluate_state(const Nonlinearity& f, std::span<const double> c,
                                   const SpectralOperator& op)
{
    const auto apply = [&](auto&& g) {
        auto v = synthesize(op, c);
        for (double& x : v) x = g(x);
        return analyze(op, v);
    };
    return std::visit(
        overloaded{
            [&](const ZeroNonlinearity&) { return std::vector<double>(op.mode_count(), 0.0); },
            [&](const PowerLaw& p) {
                return apply([&](double v) { return power_law_pointwise(p.kappa, p.ell, v); });
            },
            [&](const MemoryKernel& m) {
                return apply([&](double v) { return power_law_pointwise(m.c, m.ell, v); });
            },
            [&](const PointwiseNonlinearity& p) { return apply(p.g); },
        },
        f);
}

bool vanishes_at_zero(const Nonlinearity& f, const SpectralOperator& op)
{
    const std::vector<double> zero(op.mode_count(), 0.0);
    const auto out = evaluate_state(f, zero, op);
    return euclidean_norm(out) == 0.0;
}

GrowthCheck check_growth_condition(const Nonlinearity& f, const SpectralOperator& op,
                                   std::size_t sample_count, double amplitude_lo,
                                   double amplitude_hi, const FractionalNormSpec& spec,
                                   std::uint64_t seed)
{
    require(sample_count >= 100, ErrorKind::InvalidParameter,
            "growth check needs at least 100 samples");
    require(amplitude_lo > 0.0 && amplitude_hi >= amplitude_lo, ErrorKind::InvalidParameter,
            "amplitude range must satisfy 0 < lo <= hi");
    spec.validate(op);
    validate(f);
    const double ell = declared_exponents(f, spec.theta).ell;
    const std::size_t n = op.mode_count();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> log_amp(std::log(amplitude_lo),
                                                   std::log(amplitude_hi));
    const auto random_vector = [&](double amplitude) {
        std::vector<double> v(n);
        for (double& x : v) x = unit(rng);
        const double norm = euclidean_norm(v);
        for (double& x : v) x *= norm > 0.0 ? amplitude / norm : 0.0;
        return v;
    };

    GrowthCheck out;
    for (std::size_t s = 0; s < sample_count; ++s) {
        const auto v = random_vector(std::exp(log_amp(rng)));
        std::vector<double> w;
        if (s % 2 == 0) {
            w = random_vector(std::exp(log_amp(rng)));
        } else {
            // Nearby pair: probes the local Lipschitz constant.
            w = random_vector(std::exp(log_amp(rng)) * 1e-3);
            for (std::size_t j = 0; j < n; ++j) w[j] += v[j];
        }
        std::vector<double> diff(n);
        for (std::size_t j = 0; j < n; ++j) diff[j] = v[j] - w[j];
        const double dnorm = fractional_norm(op, diff, spec);
        if (dnorm == 0.0) {
            ++out.skipped;
            continue;
        }
        const auto fv = evaluate_state(f, v, op);
        const auto fw = evaluate_state(f, w, op);
        std::vector<double> fdiff(n);
        for (std::size_t j = 0; j < n; ++j) fdiff[j] = fv[j] - fw[j];
        const double denom = (std::pow(fractional_norm(op, v, spec), ell) +
                              std::pow(fractional_norm(op, w, spec), ell)) *
                             dnorm;
        const double ratio = euclidean_norm(fdiff) / denom;
        ++out.samples;
        if (!std::isfinite(ratio)) {
            out.pass = false;
            continue;
        }
        out.c_hat = std::max(out.c_hat, ratio);
    }
    return out;
}

KernelAdmissibility check_kernel_admissibility(double lambda_exp, double theta, double ell,
                                               double nu)
{
    KernelAdmissibility out;
    const double critical = theta * (ell + 1.0);
    if (!(lambda_exp > -1.0)) out.violated.emplace_back(kKernelIntegrable);
    if (!(critical < 1.0)) out.violated.emplace_back(kKernelSubcritical);
    if (!(1.0 + nu + lambda_exp > critical)) out.violated.emplace_back(kKernelWeight);
    out.pass = out.violated.empty();
    return out;
}

}  // namespace initrec
