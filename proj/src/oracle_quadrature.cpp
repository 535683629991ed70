#include <cmath>
#include <vector>

#include "recoil/errors.hpp"
#include "recoil/oracle.hpp"

namespace recoil {

cplx density_quadrature(double x, double x2, double t, const FreeWavePacket& packet,
                        const ModelParams& params, const QuadratureOptions& options, Exec exec) {
  const std::size_t n = options.n_phi;
  if (n < 128) throw ConfigError("density_quadrature: n_phi must be at least 128");
  const double s = options.offset_scale.value_or(params.omega0 * t / (2.0 * params.mu));
  const double u = pi * (x - x2) / params.lambda;

  std::vector<double> sines(n);
  std::vector<cplx> phase(n);
  for (std::size_t j = 0; j < n; ++j) {
    sines[j] = std::sin(2.0 * pi * static_cast<double>(j) / static_cast<double>(n));
    phase[j] = std::polar(1.0, -u * sines[j]);
  }

  cplx total;
  if (s == 0.0) {
    // psi factors are constant over the angles here; the angular double sum
    // is still done in full.
    const cplx rho0 = packet(x, t, params) * std::conj(packet(x2, t, params));
    total = kernels::periodic_double_sum(
        n, [&](std::size_t i, std::size_t j) { return phase[i] * std::conj(phase[j]); }, exec);
    total *= rho0;
  } else {
    total = kernels::periodic_double_sum(
        n,
        [&](std::size_t i, std::size_t j) {
          const double delta = s * (sines[i] + sines[j]);
          return phase[i] * std::conj(phase[j]) * packet(x + delta, t, params) *
                 std::conj(packet(x2 + delta, t, params));
        },
        exec);
  }
  const double nn = static_cast<double>(n);
  return total / (nn * nn);
}

}  // namespace recoil
