#pragma once

#include <cstddef>

namespace recoil {

enum class BesselMethod { power_series, asymptotic };

struct BesselEval {
  double argument = 0.0;
  double value = 0.0;
  BesselMethod method = BesselMethod::power_series;
};

/// |z| below this uses the power series, at or above it the Hankel expansion.
inline constexpr double j0_crossover = 12.0;

/// Bessel function of the first kind, order zero. Throws DomainError on
/// non-finite input.
BesselEval bessel_j0_eval(double z);
double bessel_j0(double z);

/// (1/2pi) * integral_0^2pi cos(a sin z) dz by the periodic trapezoid rule
/// with n panels (n >= 64). Converges spectrally, so it serves as an
/// implementation-independent check on bessel_j0.
double j0_quadrature_oracle(double a, std::size_t n);

}  // namespace recoil
