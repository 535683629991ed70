#pragma once

// Data-parallel inner loops. Every kernel has a serial reference path and an
// OpenMP path; both visit elements in the same per-row order and reduce in
// a fixed order, so the two produce bit-identical results.

#include <cstddef>
#include <span>
#include <vector>

#include "recoil/core.hpp"

namespace recoil {

enum class Exec { serial, parallel };

/// Number of OpenMP workers the parallel path will use.
int worker_count();

namespace kernels {

/// rho(i,j) = psi_i conj(psi_j) f[|i-j|] on the upper triangle, mirrored
/// with conjugation onto the lower one. `rho` is n*n, row-major.
void assemble_density(std::span<const cplx> psi, std::span<const double> f_by_offset,
                      std::span<cplx> rho, Exec exec);

/// In-place scaling of every element.
void scale(std::span<cplx> values, double factor, Exec exec);

/// Pre-computed coefficients of the discrete-mode amplitude equations, in
/// the frame rotating at omega0 and with D stored as an ordered N x N block
/// D1 whose symmetric part D1 + D1^T is the two-photon amplitude.
struct AmplitudeSystem {
  std::size_t n = 0;
  double detuning_a = 0.0;
  std::vector<double> detuning_b;  ///< n
  std::vector<double> detuning_d;  ///< n*n, symmetrized
  std::vector<double> coupling;    ///< n
  bool keep_cross_term = true;

  std::size_t dimension() const noexcept { return 1 + n + n * n; }
};

/// d/dt of the packed state [A | B_k | D1_kk'].
void amplitude_rhs(const AmplitudeSystem& sys, std::span<const cplx> state,
                   std::span<cplx> derivative, Exec exec);

/// Double sum of term(i, j) over an n x n periodic-trapezoid grid, used by
/// the density quadrature oracle. Each row is summed on its own and the row
/// sums are then added in index order.
template <class RowFn>
cplx periodic_double_sum(std::size_t n, RowFn&& row_term, Exec exec);

}  // namespace kernels
}  // namespace recoil

#include "recoil/kernels_impl.hpp"
