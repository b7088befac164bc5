#include "initrec/phi.hpp"

#include <cmath>

namespace initrec {

double phi1(double z) noexcept
{
    if (std::abs(z) < 1e-8) return 1.0 + 0.5 * z;
    return std::expm1(z) / z;
}

double phi2(double z) noexcept
{
    // expm1(z) - z cancels to z^2/2 for small z; the Taylor series
    // sum_m z^m / (m+2)! converges quickly on |z| < 1.
    if (std::abs(z) < 1.0) {
        double term = 0.5;
        double sum = 0.5;
        for (int m = 1; m < 30; ++m) {
            term *= z / static_cast<double>(m + 2);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return (std::expm1(z) - z) / (z * z);
}

}  // namespace initrec
