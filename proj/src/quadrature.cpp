#include "initrec/quadrature.hpp"

#include "initrec/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace initrec {

namespace {

GaussLegendre15 make_rule()
{
    GaussLegendre15 rule;
    constexpr int n = GaussLegendre15::points;
    for (int i = 0; i < n; ++i) {
        // Newton on P_n starting from the Chebyshev-like guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace

const GaussLegendre15& GaussLegendre15::instance()
{
    static const GaussLegendre15 rule = make_rule();
    return rule;
}

double GaussLegendre15::integrate(const std::function<double(double)>& f, double a,
                                  double b) const
{
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < points; ++i) s += weights[i] * f(mid + half * nodes[i]);
    return s * half;
}

QuadratureResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a,
                                         double b, double rel_tol, int max_depth)
{
    if (a == b) return {};
    const auto& rule = GaussLegendre15::instance();
    const double length = b - a;

    struct Panel {
        double lo, hi, value;
        int depth;
    };

    const auto abs_f = [&f](double x) { return std::abs(f(x)); };
    double scale = std::abs(rule.integrate(abs_f, a, b));

    std::vector<Panel> stack;
    stack.push_back({a, b, rule.integrate(f, a, b), 0});
    QuadratureResult out;
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (p.lo + p.hi);
        const double left = rule.integrate(f, p.lo, mid);
        const double right = rule.integrate(f, mid, p.hi);
        const double refined = left + right;
        const double err = std::abs(refined - p.value);
        const double share = std::abs((p.hi - p.lo) / length);
        const double local_abs = std::abs(rule.integrate(abs_f, p.lo, p.hi));
        const double tol = std::max(rel_tol * scale * share,
                                    64.0 * std::numeric_limits<double>::epsilon() * local_abs);
        if (err <= tol || (scale == 0.0 && local_abs == 0.0)) {
            out.value += refined;
            out.error_estimate += err;
            continue;
        }
        if (p.depth >= max_depth || !std::isfinite(err))
            throw NumericFailure("adaptive Gauss-Legendre did not converge on [" +
                                     std::to_string(p.lo) + ", " + std::to_string(p.hi) + "]",
                                 out.error_estimate + err);
        stack.push_back({p.lo, mid, left, p.depth + 1});
        stack.push_back({mid, p.hi, right, p.depth + 1});
    }
    return out;
}

}  // namespace initrec
