#pragma once

// 50-digit reference values, computed independently of the library.

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cmath>
#include <cstdint>
#include <limits>

namespace oracle {

using hp = boost::multiprecision::cpp_dec_float_50;

inline hp exp(const hp& x) { return boost::multiprecision::exp(x); }

/// (e^z - 1) / z, by its Taylor series for small |z|.
inline hp phi1(const hp& z)
{
    if (abs(z) > hp("0.5")) return (exp(z) - 1) / z;
    hp term = 1, sum = 1;
    for (int m = 2; m < 200; ++m) {
        term *= z / m;
        sum += term;
        if (abs(term) < hp("1e-55")) break;
    }
    return sum;
}

/// int_0^T e^{t lambda} dt.
inline hp exp_integral(const hp& lambda, const hp& T) { return T * phi1(lambda * T); }

/// int_0^1 s^k e^{z s} ds via the series sum_m z^m / (m! (k + m + 1)).
inline hp exp_moment(unsigned k, const hp& z)
{
    if (z < 0) {
        // e^z sum_m (-z)^m k! / (k + m + 1)!, positive terms.
        hp term = hp(1) / (k + 1), sum = term;
        for (int m = 1; m < 100000; ++m) {
            term *= -z / (k + m + 1);
            sum += term;
            if (term < hp("1e-60") * sum) break;
        }
        return exp(z) * sum;
    }
    hp term = 1, sum = hp(1) / (k + 1);
    for (int m = 1; m < 5000; ++m) {
        term *= z / m;
        const hp add = term / (k + m + 1);
        sum += add;
        if (add < hp("1e-60") * sum && m > z) break;
    }
    return sum;
}

/// int_lo^hi (p + q t) e^{lambda t} dt in closed form.
inline hp linear_exp_integral(const hp& p, const hp& q, const hp& lambda, const hp& lo,
                              const hp& hi)
{
    if (lambda == 0) return p * (hi - lo) + q * (hi * hi - lo * lo) / 2;
    const auto prim = [&](const hp& t) {
        return exp(lambda * t) * ((p + q * t) / lambda - q / (lambda * lambda));
    };
    return prim(hi) - prim(lo);
}

inline double to_double(const hp& x) { return x.convert_to<double>(); }

inline double rel_err(double got, const hp& want)
{
    if (want == 0) return std::abs(got);
    return to_double(abs((hp(got) - want) / want));
}

/// Distance in units in the last place.
inline double ulps(double a, double b)
{
    if (a == b) return 0.0;
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) / (std::numeric_limits<double>::epsilon() * scale);
}

}  // namespace oracle
