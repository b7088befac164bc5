#include "initrec/recover.hpp"

#include "initrec/error.hpp"
#include "initrec/phi.hpp"
#include "initrec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace initrec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_parameters(const NonlocalCondition& cond)
{
    std::visit(overloaded{
                   [](const ConditionE& c) {
                       require(std::isfinite(c.a), ErrorKind::InvalidParameter, "a must be finite");
                       require(c.b.value_at_zero() != 0.0, ErrorKind::InvalidParameter,
                               "problem E requires b(0) != 0");
                   },
                   [](const ConditionE100& c) {
                       require(std::isfinite(c.b) && c.b != 0.0, ErrorKind::InvalidParameter,
                               "problem E100 requires a nonzero scalar b");
                   },
                   [](const ConditionE200& c) {
                       require(!c.b.identically_zero(), ErrorKind::InvalidParameter,
                               "problem E200 requires b not identically zero");
                   },
               },
               cond);
}

std::string mode_list(const std::vector<std::size_t>& modes)
{
    std::string out;
    for (std::size_t m : modes) out += (out.empty() ? "" : ", ") + std::to_string(m);
    return out;
}

[[noreturn]] void throw_ill_posed(const SpectralReport& r)
{
    throw IllPosedMode("spectral condition for problem " + r.problem +
                           " fails at mode(s) " + mode_list(r.violating),
                       r.violating);
}

void check_trajectory(const Trajectory& g, const SpectralOperator& op, double final_time)
{
    require(g.mode_count() == op.mode_count(), ErrorKind::InvalidInput,
            "trajectory mode count does not match operator");
    require(g.grid().final_time() == final_time, ErrorKind::InvalidInput,
            "trajectory does not end at T");
}

std::vector<double> divide(std::span<const double> numerator, std::span<const double> denominator)
{
    std::vector<double> out(numerator.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = numerator[j] / denominator[j];
    return out;
}

PsiWeights make_psi(const SpectralOperator& op, const NonlocalCondition& cond,
                    const TimeGrid& grid)
{
    return std::visit(overloaded{
                          [&](const ConditionE& c) { return PsiWeights(op, grid, c.a, &c.b); },
                          [&](const ConditionE100& c) { return PsiWeights(op, grid, c.b, nullptr); },
                          [&](const ConditionE200& c) { return PsiWeights(op, grid, 0.0, &c.b); },
                      },
                      cond);
}

}  // namespace

std::string_view problem_tag(const NonlocalCondition& cond) noexcept
{
    static constexpr std::string_view tags[] = {"E", "E100", "E200"};
    return tags[cond.index()];
}

const std::vector<double>& observation(const NonlocalCondition& cond) noexcept
{
    return std::visit([](const auto& c) -> const std::vector<double>& { return c.M; }, cond);
}

NonlocalCondition with_observation(NonlocalCondition cond, std::vector<double> M)
{
    std::visit([&](auto& c) { c.M = std::move(M); }, cond);
    return cond;
}

void validate(const NonlocalCondition& cond, const SpectralOperator& op)
{
    validate_parameters(cond);
    const auto& M = observation(cond);
    require(M.size() == op.mode_count(), ErrorKind::InvalidInput,
            "observation M needs one coefficient per mode");
    for (double m : M) require(std::isfinite(m), ErrorKind::InvalidInput, "M must be finite");
}

std::vector<double> observe_condition(const Trajectory& u, const NonlocalCondition& cond)
{
    require(u.includes_t0(), ErrorKind::InvalidInput,
            "observation needs a trajectory spanning [0, T]");
    const auto first = u.at(0);
    const auto last = u.at(u.node_count() - 1);
    return std::visit(overloaded{
                          [&](const ConditionE& c) { return observe(u, c.a, c.b); },
                          [&](const ConditionE100& c) {
                              std::vector<double> m(u.mode_count());
                              for (std::size_t j = 0; j < m.size(); ++j)
                                  m[j] = first[j] - c.b * last[j];
                              return m;
                          },
                          [&](const ConditionE200& c) {
                              auto m = observe(u, 0.0, c.b);
                              for (std::size_t j = 0; j < m.size(); ++j) m[j] += first[j];
                              return m;
                          },
                      },
                      cond);
}

PsiWeights::PsiWeights(const SpectralOperator& op, const TimeGrid& grid, double kernel_scale,
                       const WeightFunction* tail)
    : grid_(grid), modes_(op.mode_count())
{
    const std::size_t n = grid.intervals();
    const double T = grid.final_time();
    left_.assign(n * modes_, 0.0);
    right_.assign(n * modes_, 0.0);
    if (tail) tail->check_covers(T);
    for (std::size_t j = 0; j < modes_; ++j) {
        const double lambda = op.eigenvalue(j);
        for (std::size_t k = 0; k < n; ++k) {
            const double t0 = grid[k], t1 = grid[k + 1], h = t1 - t0;
            double wl = 0.0, wr = 0.0;
            if (kernel_scale != 0.0) {
                const double z = h * lambda;
                const double carry = kernel_scale * std::exp((T - t1) * lambda);
                const double p2 = phi2(z);
                wl = carry * h * (phi1(z) - p2);
                wr = carry * h * p2;
            }
            if (tail) {
                const auto lo = [&](double s) {
                    return tail_weight(lambda, s, T, *tail) * ((t1 - s) / h);
                };
                const auto hi = [&](double s) {
                    return tail_weight(lambda, s, T, *tail) * ((s - t0) / h);
                };
                try {
                    wl += adaptive_gauss_legendre(lo, t0, t1).value;
                    wr += adaptive_gauss_legendre(hi, t0, t1).value;
                } catch (const NumericFailure& e) {
                    throw NumericFailure(std::string(e.what()) + " (mode " +
                                             std::to_string(j + 1) + ")",
                                         e.achieved_error(), j + 1);
                }
            }
            left_[k * modes_ + j] = wl;
            right_[k * modes_ + j] = wr;
        }
    }
}

std::vector<double> PsiWeights::apply(const Trajectory& g) const
{
    require(g.grid() == grid_, ErrorKind::InvalidInput, "trajectory is not on the weight grid");
    require(g.mode_count() == modes_, ErrorKind::InvalidInput,
            "trajectory mode count does not match weights");
    std::vector<double> out(modes_, 0.0);
    for (std::size_t k = 0; k + 1 < g.node_count(); ++k) {
        const auto gl = (k == 0 && !g.includes_t0()) ? g.at(1) : g.at(k);
        const auto gr = g.at(k + 1);
        for (std::size_t j = 0; j < modes_; ++j)
            out[j] += left_[k * modes_ + j] * gl[j] + right_[k * modes_ + j] * gr[j];
    }
    return out;
}

double PsiWeights::scaled_bound(std::span<const double> denominators) const
{
    double bound = 0.0;
    const std::size_t n = grid_.intervals();
    for (std::size_t j = 0; j < modes_; ++j) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            sum += std::abs(left_[k * modes_ + j]) + std::abs(right_[k * modes_ + j]);
        bound = std::max(bound, sum / std::abs(denominators[j]));
    }
    return bound;
}

std::vector<double> apply_psi_E(double a, const WeightFunction& b, double final_time,
                                const Trajectory& g, const SpectralOperator& op)
{
    check_trajectory(g, op, final_time);
    return PsiWeights(op, g.grid(), a, &b).apply(g);
}

std::vector<double> sigma_E(const ModeWeights& w, std::span<const double> M,
                            const Trajectory& g, const SpectralOperator& op)
{
    require(M.size() == op.mode_count() && w.beta.size() == op.mode_count(),
            ErrorKind::InvalidInput, "mode counts disagree");
    const auto mu = phi_T_inverse_diagonal(w);
    const auto psi = apply_psi_E(w.a, w.b, w.final_time, g, op);
    std::vector<double> out(M.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = (M[j] - psi[j]) * mu[j];
    return out;
}

std::vector<double> sigma_E100(double b, double final_time, std::span<const double> M,
                               const Trajectory& g, const SpectralOperator& op)
{
    check_trajectory(g, op, final_time);
    ConditionE100 cond{b, std::vector<double>(M.begin(), M.end())};
    return SigmaMap(op, cond, g.grid())(g);
}

std::vector<double> sigma_E200(const WeightFunction& b, double final_time,
                               std::span<const double> M, const Trajectory& g,
                               const SpectralOperator& op)
{
    check_trajectory(g, op, final_time);
    ConditionE200 cond{b, std::vector<double>(M.begin(), M.end())};
    return SigmaMap(op, cond, g.grid())(g);
}

SpectralReport check_spectral_condition(const SpectralOperator& op,
                                        const NonlocalCondition& cond, double final_time,
                                        double tol)
{
    validate_parameters(cond);
    require(final_time > 0.0, ErrorKind::InvalidParameter, "T must be positive");
    SpectralReport r;
    r.problem = std::string(problem_tag(cond));
    r.tolerance = tol;
    const std::size_t n = op.mode_count();
    r.denominator.resize(n);
    r.scale.resize(n);
    std::visit(overloaded{
                   [&](const ConditionE& c) {
                       const auto w = mode_weights(op, c.a, c.b, final_time);
                       r.denominator = w.beta;
                       r.scale = w.scale;
                   },
                   [&](const ConditionE100& c) {
                       for (std::size_t j = 0; j < n; ++j) {
                           const double decay = std::exp(final_time * op.eigenvalue(j));
                           r.denominator[j] = 1.0 - c.b * decay;
                           r.scale[j] = 1.0 + std::abs(c.b) * decay;
                       }
                   },
                   [&](const ConditionE200& c) {
                       const auto w = mode_weights(op, 0.0, c.b, final_time);
                       for (std::size_t j = 0; j < n; ++j) {
                           r.denominator[j] = 1.0 + w.phi0[j];
                           r.scale[j] = 1.0 + w.scale[j];
                       }
                   },
               },
               cond);
    r.margin.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        r.margin[j] = r.scale[j] > 0.0 ? std::abs(r.denominator[j]) / r.scale[j] : 0.0;
        if (!(r.margin[j] > tol)) r.violating.push_back(j + 1);
    }
    r.pass = r.violating.empty();
    return r;
}

SigmaMap::SigmaMap(const SpectralOperator& op, const NonlocalCondition& cond,
                   const TimeGrid& grid, double spectral_tol)
    : cond_(cond),
      report_(check_spectral_condition(op, cond, grid.final_time(), spectral_tol)),
      psi_(report_.pass ? make_psi(op, cond, grid) : PsiWeights(op, grid, 0.0, nullptr)),
      psi_sign_(std::holds_alternative<ConditionE100>(cond) ? 1.0 : -1.0)
{
    if (!report_.pass) throw_ill_posed(report_);
}

std::vector<double> SigmaMap::operator()(const Trajectory& g) const
{
    return (*this)(g, observation(cond_));
}

std::vector<double> SigmaMap::operator()(const Trajectory& g, std::span<const double> M) const
{
    require(M.size() == report_.denominator.size(), ErrorKind::InvalidInput,
            "observation M needs one coefficient per mode");
    auto psi = psi_.apply(g);
    for (std::size_t j = 0; j < psi.size(); ++j) psi[j] = M[j] + psi_sign_ * psi[j];
    return divide(psi, report_.denominator);
}

double small_time_constant(const SpectralOperator& op, const ModeWeights& w,
                           const FractionalNormSpec& spec)
{
    spec.validate(op);
    const auto mu = phi_T_inverse_diagonal(w);
    double c = 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j)
        c = std::max(c, std::abs(mu[j]) / (spec.delta0 - op.eigenvalue(j)));
    return w.final_time * c;
}

FixedPointReport picard_recover(const SpectralOperator& op, const NonlocalCondition& cond,
                                const Nonlinearity& f, const TimeGrid& grid,
                                const FractionalNormSpec& spec, const PicardOptions& options)
{
    validate(cond, op);
    validate(f);
    spec.validate(op);
    require(options.tol > 0.0, ErrorKind::InvalidParameter, "tol must be positive");
    require(options.max_iter >= 1, ErrorKind::InvalidParameter, "max_iter must be at least 1");
    const std::size_t modes = op.mode_count();
    const double T = grid.final_time();

    FixedPointReport rep;
    if (!vanishes_at_zero(f, op)) {
        require(options.small_time, ErrorKind::AdmissibilityViolation,
                "f(0) != 0: recovery needs the small-time mode");
        const auto* e = std::get_if<ConditionE>(&cond);
        require(e && e->a == 0.0, ErrorKind::InvalidParameter,
                "small-time mode applies to problem E with a = 0 only");
        const double c = small_time_constant(op, mode_weights(op, 0.0, e->b, T), spec);
        rep.small_time_constant = c;
        std::ostringstream msg;
        msg << "f(0) != 0: well-posedness relies on T being small (T ||Phi_T^-1||_{E1->E0} = "
            << c << ")";
        rep.warnings.push_back(msg.str());
    }

    const SigmaMap sigma(op, cond, grid, options.spectral_tol);
    const Trajectory zero(grid, modes, true);
    rep.sigma_T0_norm = euclidean_norm(sigma(evaluate(f, zero, op)));
    if (options.threshold) {
        rep.threshold_m = options.threshold->m_T;
        if (rep.sigma_T0_norm > options.threshold->m_T)
            rep.warnings.emplace_back("||Sigma_T(0)|| exceeds the estimated threshold m_T");
    }

    Trajectory u = options.initial ? *options.initial : zero;
    require(u.grid() == grid && u.mode_count() == modes, ErrorKind::InvalidInput,
            "initial iterate does not match grid and operator");
    double previous = 0.0;
    for (std::size_t k = 1; k <= options.max_iter; ++k) {
        std::vector<double> s;
        Trajectory next(grid, modes, true);
        try {
            const Trajectory g = evaluate(f, u, op);
            s = sigma(g);
            next = duhamel_convolve(op, g);
        } catch (const NumericFailure& e) {
            rep.warnings.push_back(std::string("iteration ") + std::to_string(k) +
                                   " failed: " + e.what());
            break;
        }
        for (std::size_t i = 0; i < grid.node_count(); ++i) {
            const auto hom = semigroup_apply(op, grid[i], s);
            auto row = next.at(i);
            for (std::size_t j = 0; j < modes; ++j) row[j] += hom[j];
        }
        const Trajectory diff = next - u;
        const double rw = weighted_sup_norm(op, diff, spec.theta, spec);
        const double rs = sup_norm_e0(diff);
        const double combined = rw + rs;
        rep.residual_weighted.push_back(rw);
        rep.residual_sup.push_back(rs);
        if (k >= 2) {
            double ratio = 0.0;
            if (previous > 0.0)
                ratio = combined / previous;
            else if (combined > 0.0)
                ratio = std::numeric_limits<double>::infinity();
            rep.contraction_ratios.push_back(ratio);
        }
        rep.iterations = k;
        rep.u0_recovered = std::move(s);
        u = std::move(next);
        if (!std::isfinite(combined) || !u.all_finite()) {
            rep.warnings.emplace_back("iterates left the finite range");
            break;
        }
        if (k >= 2 && combined <= options.tol) {
            rep.converged = true;
            break;
        }
        previous = combined;
    }
    if (!rep.converged && rep.warnings.empty())
        rep.warnings.emplace_back("no convergence within max_iter iterations");
    rep.solution = std::move(u);
    return rep;
}

FixedPointReport picard_recover(const SpectralOperator& op, const NonlocalCondition& cond,
                                const Nonlinearity& f, const TimeGrid& grid,
                                const FractionalNormSpec& spec, double tol, std::size_t max_iter)
{
    PicardOptions options;
    options.tol = tol;
    options.max_iter = max_iter;
    return picard_recover(op, cond, f, grid, spec, options);
}

WellPosednessEstimate estimate_threshold(const SpectralOperator& op,
                                         const NonlocalCondition& cond, const Nonlinearity& f,
                                         const TimeGrid& grid, const FractionalNormSpec& spec,
                                         double gamma, std::optional<double> nu,
                                         const ThresholdInputs& inputs)
{
    auto exponents = declared_exponents(f, spec.theta);
    exponents.gamma = gamma;
    if (nu) exponents.nu = *nu;
    validate_exponents(exponents);

    const auto growth = check_growth_condition(f, op, inputs.growth_samples, inputs.amplitude_lo,
                                               inputs.amplitude_hi, spec, inputs.seed);
    if (!growth.pass)
        throw NumericFailure("growth check produced non-finite ratios");
    double c = growth.c_hat;
    if (const auto* m = std::get_if<MemoryKernel>(&f)) {
        const double T = grid.final_time();
        c *= std::max(1.0, std::pow(T, 1.0 + m->lambda_exp) / (1.0 + m->lambda_exp));
    }
    if (c > 0.0) {
        const SigmaMap sigma(op, cond, grid);
        c *= std::max(1.0, sigma.lipschitz_bound());
    }
    return theoretical_threshold(op, exponents, c, grid.final_time(), spec);
}

}  // namespace initrec
