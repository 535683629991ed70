#include "recoil/kernels.hpp"

#include <omp.h>

#include <complex>

namespace recoil {

int worker_count() { return omp_get_max_threads(); }

namespace kernels {

namespace {

constexpr cplx minus_i{0.0, -1.0};

void density_row(std::span<const cplx> psi, std::span<const double> f, std::span<cplx> rho,
                 std::size_t i) {
  const std::size_t n = psi.size();
  const cplx psi_i = psi[i];
  for (std::size_t j = i; j < n; ++j) {
    const cplx v = psi_i * std::conj(psi[j]) * f[j - i];
    rho[i * n + j] = v;
    rho[j * n + i] = std::conj(v);
  }
  // Diagonal is real by construction.
  rho[i * n + i] = cplx{std::norm(psi_i) * f[0], 0.0};
}

void amplitude_row(const AmplitudeSystem& sys, std::span<const cplx> x, std::span<cplx> dx,
                   std::size_t k) {
  const std::size_t n = sys.n;
  const cplx a = x[0];
  const cplx* b = x.data() + 1;
  const cplx* d1 = x.data() + 1 + n;
  cplx* db = dx.data() + 1;
  cplx* dd1 = dx.data() + 1 + n;
  const double* g = sys.coupling.data();

  const cplx* row = d1 + k * n;
  cplx feed{0.0, 0.0};
  if (sys.keep_cross_term) {
    for (std::size_t q = 0; q < n; ++q) feed += g[q] * (row[q] + d1[q * n + k]);
  } else {
    for (std::size_t q = 0; q < n; ++q) feed += g[q] * row[q];
  }
  db[k] = minus_i * (sys.detuning_b[k] * b[k] + g[k] * a + feed);

  const cplx bk = b[k];
  const double* det = sys.detuning_d.data() + k * n;
  cplx* out = dd1 + k * n;
  for (std::size_t q = 0; q < n; ++q) out[q] = minus_i * (det[q] * row[q] + g[q] * bk);
}

}  // namespace

void assemble_density(std::span<const cplx> psi, std::span<const double> f_by_offset,
                      std::span<cplx> rho, Exec exec) {
  const std::size_t n = psi.size();
  if (exec == Exec::parallel) {
    const long long rows = static_cast<long long>(n);
    // Row i touches (i, j>=i) and its mirror (j, i); pairs are disjoint.
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < rows; ++i) {
      density_row(psi, f_by_offset, rho, static_cast<std::size_t>(i));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) density_row(psi, f_by_offset, rho, i);
  }
}

void scale(std::span<cplx> values, double factor, Exec exec) {
  if (exec == Exec::parallel) {
    const long long n = static_cast<long long>(values.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] *= factor;
  } else {
    for (auto& v : values) v *= factor;
  }
}

void amplitude_rhs(const AmplitudeSystem& sys, std::span<const cplx> state,
                   std::span<cplx> derivative, Exec exec) {
  const std::size_t n = sys.n;
  cplx emit{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) emit += sys.coupling[k] * state[1 + k];
  derivative[0] = minus_i * (sys.detuning_a * state[0] + 2.0 * emit);

  if (exec == Exec::parallel) {
    const long long rows = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long k = 0; k < rows; ++k) {
      amplitude_row(sys, state, derivative, static_cast<std::size_t>(k));
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) amplitude_row(sys, state, derivative, k);
  }
}

}  // namespace kernels
}  // namespace recoil
