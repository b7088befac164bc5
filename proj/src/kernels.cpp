#include "initrec/kernels.hpp"

#include "initrec/error.hpp"
#include "initrec/phi.hpp"
#include "initrec/quadrature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace initrec {

namespace {

constexpr double kTableRelTol = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double eval_table(const WeightFunction::Tabulated& tab, double t)
{
    if (t <= tab.t.front()) return tab.b.front();
    if (t >= tab.t.back()) return tab.b.back();
    const auto it = std::upper_bound(tab.t.begin(), tab.t.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - tab.t.begin());
    const double t0 = tab.t[k - 1], t1 = tab.t[k];
    const double u = (t - t0) / (t1 - t0);
    return tab.b[k - 1] + u * (tab.b[k] - tab.b[k - 1]);
}

// int_lo^hi g(b(t)) e^{(t - shift) lambda} dt over a table, panel by panel so
// that every Gauss-Legendre panel sees a smooth integrand.
double table_integral(const WeightFunction::Tabulated& tab, double lambda, double lo, double hi,
                      double shift, bool absolute, double rel_tol)
{
    std::vector<double> breaks{lo};
    for (double node : tab.t)
        if (node > lo && node < hi) breaks.push_back(node);
    breaks.push_back(hi);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const auto integrand = [&](double t) {
            const double bt = eval_table(tab, t);
            return (absolute ? std::abs(bt) : bt) * std::exp((t - shift) * lambda);
        };
        total += adaptive_gauss_legendre(integrand, breaks[p], breaks[p + 1], rel_tol).value;
    }
    return total;
}

// Coefficients of tau -> p(s + tau).
std::vector<double> taylor_shift(const std::vector<double>& c, double s)
{
    std::vector<double> out(c.begin(), c.end());
    // Repeated synthetic division (Horner shift), exact in structure.
    const std::size_t n = out.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t k = n - 1; k > i; --k) out[k - 1] += s * out[k];
    return out;
}

double poly_exp_integral(const std::vector<double>& c, double lambda, double length)
{
    const double z = lambda * length;
    double sum = 0.0;
    double power = length;  // length^{k+1}
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] != 0.0) sum += c[k] * power * exp_moment(static_cast<unsigned>(k), z);
        power *= length;
    }
    return sum;
}

}  // namespace

WeightFunction::WeightFunction(Representation repr) : repr_(std::move(repr))
{
    sign_certificate_ = std::visit(
        overloaded{
            [](const Constant& c) { return c.value >= 0.0; },
            [](const Polynomial& p) {
                return std::all_of(p.coeffs.begin(), p.coeffs.end(),
                                   [](double v) { return v >= 0.0; });
            },
            [](const Tabulated& t) {
                return std::all_of(t.b.begin(), t.b.end(), [](double v) { return v >= 0.0; });
            },
        },
        repr_);
}

WeightFunction WeightFunction::constant(double value)
{
    require(std::isfinite(value), ErrorKind::InvalidInput, "weight value must be finite");
    return WeightFunction(Constant{value});
}

WeightFunction WeightFunction::polynomial(std::vector<double> coeffs)
{
    require(!coeffs.empty(), ErrorKind::InvalidInput, "polynomial weight needs coefficients");
    require(std::all_of(coeffs.begin(), coeffs.end(), [](double v) { return std::isfinite(v); }),
            ErrorKind::InvalidInput, "polynomial coefficients must be finite");
    return WeightFunction(Polynomial{std::move(coeffs)});
}

WeightFunction WeightFunction::tabulated(std::vector<double> t, std::vector<double> b)
{
    require(t.size() == b.size(), ErrorKind::InvalidInput,
            "tabulated weight: t and b differ in length");
    require(t.size() >= 2, ErrorKind::InvalidInput, "tabulated weight needs at least 2 nodes");
    for (std::size_t i = 0; i < t.size(); ++i) {
        require(std::isfinite(t[i]) && std::isfinite(b[i]), ErrorKind::InvalidInput,
                "tabulated weight entries must be finite");
        if (i > 0)
            require(t[i] > t[i - 1], ErrorKind::InvalidInput,
                    "tabulated weight nodes must be strictly increasing");
    }
    return WeightFunction(Tabulated{std::move(t), std::move(b)});
}

double WeightFunction::operator()(double t) const
{
    return std::visit(overloaded{
                          [](const Constant& c) { return c.value; },
                          [t](const Polynomial& p) {
                              double s = 0.0;
                              for (std::size_t k = p.coeffs.size(); k-- > 0;) s = s * t + p.coeffs[k];
                              return s;
                          },
                          [t](const Tabulated& tab) { return eval_table(tab, t); },
                      },
                      repr_);
}

bool WeightFunction::identically_zero() const noexcept
{
    return std::visit(
        overloaded{
            [](const Constant& c) { return c.value == 0.0; },
            [](const Polynomial& p) {
                return std::all_of(p.coeffs.begin(), p.coeffs.end(),
                                   [](double v) { return v == 0.0; });
            },
            [](const Tabulated& t) {
                return std::all_of(t.b.begin(), t.b.end(), [](double v) { return v == 0.0; });
            },
        },
        repr_);
}

std::optional<double> WeightFunction::constant_value() const noexcept
{
    if (const auto* c = std::get_if<Constant>(&repr_)) return c->value;
    return std::nullopt;
}

std::uint64_t WeightFunction::identity_hash() const noexcept
{
    std::uint64_t h = 1469598103934665603ull;
    const auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    const auto mix_all = [&mix](const std::vector<double>& values) {
        for (double v : values) mix(std::bit_cast<std::uint64_t>(v));
    };
    mix(repr_.index());
    std::visit(overloaded{
                   [&](const Constant& c) { mix(std::bit_cast<std::uint64_t>(c.value)); },
                   [&](const Polynomial& p) { mix_all(p.coeffs); },
                   [&](const Tabulated& t) {
                       mix_all(t.t);
                       mix_all(t.b);
                   },
               },
               repr_);
    return h;
}

void WeightFunction::check_covers(double final_time) const
{
    if (const auto* tab = std::get_if<Tabulated>(&repr_))
        require(tab->t.front() <= 0.0 && tab->t.back() >= final_time, ErrorKind::InvalidInput,
                "tabulated weight does not cover [0, T]");
}

double exp_moment(unsigned k, double z)
{
    if (k == 0) return phi1(z);
    const double kd = static_cast<double>(k);
    if (std::abs(z) <= 2.0 * kd + 40.0) {
        // Both series have positive terms only.
        if (z >= 0.0) {
            // sum_m z^m / (m! (k + m + 1))
            double term = 1.0;
            double sum = 1.0 / (kd + 1.0);
            for (int m = 1; m < 2000; ++m) {
                term *= z / m;
                const double add = term / (kd + m + 1.0);
                sum += add;
                if (add <= 1e-17 * sum) break;
            }
            return sum;
        }
        // e^z sum_m (-z)^m k! / (k + m + 1)!
        double term = 1.0 / (kd + 1.0);
        double sum = term;
        for (int m = 1; m < 2000; ++m) {
            term *= -z / (kd + m + 1.0);
            sum += term;
            if (term <= 1e-17 * sum) break;
        }
        return std::exp(z) * sum;
    }
    // |z| > 2k: upward integration by parts J_i = (e^z - i J_{i-1}) / z is stable.
    const double ez = std::exp(z);
    double j = phi1(z);
    for (unsigned i = 1; i <= k; ++i) j = (ez - static_cast<double>(i) * j) / z;
    return j;
}

double exp_weight_integral(double lambda, double final_time, const WeightFunction& b)
{
    require(final_time > 0.0, ErrorKind::InvalidParameter, "T must be positive");
    return std::visit(
        overloaded{
            [&](const WeightFunction::Constant& c) {
                const double z = lambda * final_time;
                if (std::abs(z) < 1e-8) return c.value * final_time * (1.0 + 0.5 * z);
                return c.value * final_time * phi1(z);
            },
            [&](const WeightFunction::Polynomial& p) {
                return poly_exp_integral(p.coeffs, lambda, final_time);
            },
            [&](const WeightFunction::Tabulated& t) {
                b.check_covers(final_time);
                return table_integral(t, lambda, 0.0, final_time, 0.0, false, kTableRelTol);
            },
        },
        b.representation());
}

double tail_weight(double lambda, double s, double final_time, const WeightFunction& b)
{
    require(s >= 0.0 && s <= final_time, ErrorKind::InvalidParameter,
            "tail_weight requires 0 <= s <= T");
    if (s == final_time) return 0.0;
    const double length = final_time - s;
    return std::visit(
        overloaded{
            [&](const WeightFunction::Constant& c) { return c.value * length * phi1(lambda * length); },
            [&](const WeightFunction::Polynomial& p) {
                return poly_exp_integral(taylor_shift(p.coeffs, s), lambda, length);
            },
            [&](const WeightFunction::Tabulated& t) {
                b.check_covers(final_time);
                return table_integral(t, lambda, s, final_time, s, false, kTableRelTol);
            },
        },
        b.representation());
}

double abs_exp_weight_integral(double lambda, double final_time, const WeightFunction& b)
{
    if (b.sign_certificate()) return exp_weight_integral(lambda, final_time, b);
    return std::visit(
        overloaded{
            [&](const WeightFunction::Constant& c) {
                return std::abs(c.value) * final_time * phi1(lambda * final_time);
            },
            [&](const WeightFunction::Polynomial&) {
                const auto f = [&](double t) { return std::abs(b(t)) * std::exp(t * lambda); };
                return adaptive_gauss_legendre(f, 0.0, final_time, 1e-8).value;
            },
            [&](const WeightFunction::Tabulated& t) {
                b.check_covers(final_time);
                return table_integral(t, lambda, 0.0, final_time, 0.0, true, 1e-8);
            },
        },
        b.representation());
}

ModeWeights mode_weights(const SpectralOperator& op, double a, const WeightFunction& b,
                         double final_time)
{
    require(final_time > 0.0, ErrorKind::InvalidParameter, "T must be positive");
    require(std::isfinite(a), ErrorKind::InvalidParameter, "a must be finite");
    const std::size_t n = op.mode_count();
    ModeWeights w;
    w.final_time = final_time;
    w.a = a;
    w.b = b;
    w.weight_hash = b.identity_hash();
    w.eigenvalues.assign(op.eigenvalues().begin(), op.eigenvalues().end());
    w.beta.resize(n);
    w.phi0.resize(n);
    w.scale.resize(n);
    const auto constant = b.constant_value();
    if (constant) w.k.emplace(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double lambda = op.eigenvalue(j);
        const double decay = std::exp(final_time * lambda);
        try {
            w.phi0[j] = exp_weight_integral(lambda, final_time, b);
            w.scale[j] = std::abs(a) * decay + abs_exp_weight_integral(lambda, final_time, b);
        } catch (const NumericFailure& e) {
            throw NumericFailure(std::string(e.what()) + " (mode " + std::to_string(j + 1) + ")",
                                 e.achieved_error(), j + 1);
        }
        w.beta[j] = a * decay + w.phi0[j];
        if (constant) (*w.k)[j] = 1.0 - *constant * decay;
        require(std::isfinite(w.beta[j]) && std::isfinite(w.phi0[j]), ErrorKind::NumericFailure,
                "non-finite mode weight at mode " + std::to_string(j + 1));
    }
    return w;
}

std::vector<double> phi_T_inverse_diagonal(const ModeWeights& w)
{
    std::vector<std::size_t> bad;
    std::vector<double> mu(w.beta.size());
    for (std::size_t j = 0; j < w.beta.size(); ++j) {
        if (!(std::abs(w.beta[j]) > kSpectralTolerance * w.scale[j])) {
            bad.push_back(j + 1);
            continue;
        }
        mu[j] = 1.0 / w.beta[j];
    }
    if (!bad.empty()) {
        std::string list;
        for (std::size_t m : bad) list += (list.empty() ? "" : ", ") + std::to_string(m);
        throw IllPosedMode("observation operator is singular at mode(s) " + list, std::move(bad));
    }
    return mu;
}

double beta_function(double x, double y)
{
    require(x > 0.0 && y > 0.0, ErrorKind::InvalidParameter,
            "Beta function needs positive arguments");
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

}  // namespace initrec
