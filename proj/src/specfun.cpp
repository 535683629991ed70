#include "recoil/specfun.hpp"

#include <cmath>

#include "recoil/core.hpp"
#include "recoil/errors.hpp"

namespace recoil {

namespace {

// sum_k (-y)^k / (k!)^2 with y = z^2/4, nested Horner form in extended
// precision. Below the crossover y < 36 and 48 terms leave a tail < 1e-40.
long double j0_series(long double z) {
  constexpr int terms = 48;
  const long double y = z * z / 4.0L;
  long double s = 1.0L;
  for (int k = terms; k >= 1; --k) {
    const long double kk = static_cast<long double>(k);
    s = 1.0L - y / (kk * kk) * s;
  }
  return s;
}

// Hankel expansion J0 = sqrt(2/(pi z)) (P cos chi - Q sin chi), chi = z - pi/4.
// Term magnitudes t_k = prod_{m<=k} (2m-1)^2 / (k! 8^k z^k) shrink until k ~ 2z;
// the series is cut just before the smallest term.
long double j0_hankel(long double z) {
  long double p = 0.0L;
  long double q = 0.0L;
  long double term = 1.0L;
  long double prev = HUGE_VALL;
  for (int k = 0; k < 400; ++k) {
    if (k > 0) {
      const long double odd = 2.0L * k - 1.0L;
      term *= odd * odd / (8.0L * k * z);
    }
    if (term >= prev) break;
    prev = term;
    // P collects even k with sign (-1)^(k/2); Q collects odd k with
    // sign -(-1)^((k-1)/2).
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q -= term; break;
      case 2: p -= term; break;
      case 3: q += term; break;
    }
  }
  const long double chi = z - std::numbers::pi_v<long double> / 4.0L;
  return std::sqrt(2.0L / (std::numbers::pi_v<long double> * z)) *
         (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

BesselEval bessel_j0_eval(double z) {
  if (!std::isfinite(z)) throw DomainError("bessel_j0: argument must be finite");
  const double az = std::fabs(z);
  BesselEval out;
  out.argument = z;
  if (az < j0_crossover) {
    out.method = BesselMethod::power_series;
    out.value = static_cast<double>(j0_series(az));
  } else {
    out.method = BesselMethod::asymptotic;
    out.value = static_cast<double>(j0_hankel(az));
  }
  return out;
}

double bessel_j0(double z) { return bessel_j0_eval(z).value; }

double j0_quadrature_oracle(double a, std::size_t n) {
  if (n < 64) throw DomainError("j0_quadrature_oracle: need at least 64 panels");
  if (!std::isfinite(a)) throw DomainError("j0_quadrature_oracle: argument must be finite");
  const double h = 2.0 * pi / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sum += std::cos(a * std::sin(h * static_cast<double>(j)));
  }
  return sum / static_cast<double>(n);
}

}  // namespace recoil
