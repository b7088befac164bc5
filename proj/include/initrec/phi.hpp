#pragma once

namespace initrec {

/// (e^z - 1) / z, with phi1(0) = 1. Uses the series 1 + z/2 for |z| < 1e-8.
double phi1(double z) noexcept;

/// (e^z - 1 - z) / z^2, with phi2(0) = 1/2.
double phi2(double z) noexcept;

}  // namespace initrec
