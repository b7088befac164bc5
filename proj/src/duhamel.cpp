#include "initrec/duhamel.hpp"

#include "initrec/error.hpp"

#include <cmath>
#include <optional>
#include <variant>

namespace initrec {

ExponentialStepper::ExponentialStepper(const SpectralOperator& op, const TimeGrid& grid)
    : modes_(op.mode_count())
{
    const std::size_t n = grid.intervals();
    decay_.resize(n * modes_);
    left_.resize(n * modes_);
    right_.resize(n * modes_);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = grid[i + 1] - grid[i];
        for (std::size_t j = 0; j < modes_; ++j) {
            const double z = h * op.eigenvalue(j);
            const double p1 = phi1(z);
            const double p2 = phi2(z);
            decay_[i * modes_ + j] = std::exp(z);
            left_[i * modes_ + j] = h * (p1 - p2);
            right_[i * modes_ + j] = h * p2;
        }
    }
}

Trajectory duhamel_convolve(const SpectralOperator& op, const Trajectory& g)
{
    require(g.mode_count() == op.mode_count(), ErrorKind::InvalidInput,
            "trajectory mode count does not match operator");
    const ExponentialStepper step(op, g.grid());
    const std::size_t modes = op.mode_count();
    Trajectory v(g.grid(), modes, true);
    for (std::size_t i = 0; i + 1 < g.node_count(); ++i) {
        const auto gi = (i == 0 && !g.includes_t0()) ? g.at(1) : g.at(i);
        const auto gn = g.at(i + 1);
        const auto prev = v.at(i);
        auto next = v.at(i + 1);
        for (std::size_t j = 0; j < modes; ++j)
            next[j] = step.decay(i, j) * prev[j] + step.weight_left(i, j) * gi[j] +
                      step.weight_right(i, j) * gn[j];
    }
    return v;
}

Trajectory duhamel_convolve(const SpectralOperator& op, const Trajectory& g,
                            const TimeGrid& grid)
{
    require(g.grid() == grid, ErrorKind::InvalidInput, "trajectory is not defined on this grid");
    return duhamel_convolve(op, g);
}

Trajectory forward_solve(const SpectralOperator& op, std::span<const double> u0,
                         const Nonlinearity& f, const TimeGrid& grid,
                         const ForwardOptions& options)
{
    const std::size_t modes = op.mode_count();
    require(u0.size() == modes, ErrorKind::InvalidInput,
            "initial coefficients do not match mode count");
    for (double c : u0)
        require(std::isfinite(c), ErrorKind::InvalidInput, "initial coefficients must be finite");
    validate(f);

    Trajectory u(grid, modes, true);
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        const auto h = semigroup_apply(op, grid[i], u0);
        std::copy(h.begin(), h.end(), u.at(i).begin());
    }
    if (std::holds_alternative<ZeroNonlinearity>(f)) return u;

    const ExponentialStepper step(op, grid);
    const auto* memory = std::get_if<MemoryKernel>(&f);
    std::optional<MemoryQuadrature> quad;
    // Coefficients of |u|^ell u at every node already fixed (memory kernel only).
    std::vector<std::vector<double>> q_history;
    const PowerLaw memory_integrand{1.0, memory ? memory->ell : 1.0};
    if (memory) {
        quad.emplace(grid, memory->lambda_exp);
        q_history.push_back(evaluate_state(memory_integrand, u.at(0), op));
    }

    // Nonlinear value at node i given the candidate state there.
    const auto nonlinear_at = [&](std::size_t i, std::span<const double> state) {
        if (!memory) return evaluate_state(f, state, op);
        std::vector<double> out(modes, 0.0);
        if (i == 0) return out;
        const auto q_new = evaluate_state(memory_integrand, state, op);
        for (std::size_t k = 0; k < i; ++k) {
            const double lo = memory->c * quad->lower(i, k);
            const double hi = memory->c * quad->upper(i, k);
            const auto& qk = q_history[k];
            const auto& qk1 = (k + 1 == i) ? q_new : q_history[k + 1];
            for (std::size_t j = 0; j < modes; ++j) out[j] += lo * qk[j] + hi * qk1[j];
        }
        return out;
    };

    std::vector<double> w(modes, 0.0);  // Duhamel part at the current node
    std::vector<double> n_cur = nonlinear_at(0, u.at(0));
    std::vector<double> base(modes), w_new(modes), state(modes), n_next;
    for (std::size_t i = 0; i + 1 < grid.node_count(); ++i) {
        const auto hom = u.at(i + 1);  // holds e^{t A} u0 until overwritten below
        std::vector<double> homogeneous(hom.begin(), hom.end());
        for (std::size_t j = 0; j < modes; ++j)
            base[j] = step.decay(i, j) * w[j] + step.weight_left(i, j) * n_cur[j];
        // Predictor: freeze the nonlinearity over the step.
        for (std::size_t j = 0; j < modes; ++j) {
            w_new[j] = base[j] + step.weight_right(i, j) * n_cur[j];
            state[j] = homogeneous[j] + w_new[j];
        }
        bool settled = false;
        double residual = 0.0;
        for (int it = 0; it < options.max_corrector_iterations; ++it) {
            n_next = nonlinear_at(i + 1, state);
            residual = 0.0;
            double size = 0.0;
            for (std::size_t j = 0; j < modes; ++j) {
                const double updated = base[j] + step.weight_right(i, j) * n_next[j];
                residual += (updated - w_new[j]) * (updated - w_new[j]);
                w_new[j] = updated;
                state[j] = homogeneous[j] + updated;
                size += state[j] * state[j];
            }
            residual = std::sqrt(residual);
            if (!std::isfinite(residual)) break;
            if (residual <= options.corrector_rel_tol * std::sqrt(size) || residual == 0.0) {
                settled = true;
                break;
            }
        }
        if (!settled)
            throw NumericFailure("forward corrector did not settle at step " +
                                     std::to_string(i + 1),
                                 residual, i + 1);
        n_next = nonlinear_at(i + 1, state);
        if (memory) q_history.push_back(evaluate_state(memory_integrand, state, op));
        w = w_new;
        n_cur = n_next;
        std::copy(state.begin(), state.end(), u.at(i + 1).begin());
    }
    return u;
}

std::vector<double> observe(const Trajectory& u, double a, const WeightFunction& b)
{
    require(u.includes_t0(), ErrorKind::InvalidInput,
            "observation needs a trajectory spanning [0, T]");
    const auto& grid = u.grid();
    b.check_covers(grid.final_time());
    const std::size_t modes = u.mode_count();
    std::vector<double> m(modes, 0.0);
    const auto last = u.at(u.node_count() - 1);
    for (std::size_t j = 0; j < modes; ++j) m[j] = a * last[j];
    for (std::size_t i = 0; i + 1 < u.node_count(); ++i) {
        const double half = 0.5 * (grid[i + 1] - grid[i]);
        const double bl = b(grid[i]) * half;
        const double br = b(grid[i + 1]) * half;
        const auto ul = u.at(i);
        const auto ur = u.at(i + 1);
        for (std::size_t j = 0; j < modes; ++j) m[j] += bl * ul[j] + br * ur[j];
    }
    return m;
}

}  // namespace initrec
