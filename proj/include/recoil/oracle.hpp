#pragma once

// Brute-force validators: direct integration of the discrete-mode amplitude
// equations, direct angular quadrature of the pre-factorization density
// integral, and the discrete Weisskopf-Wigner rate sum.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "recoil/amplitudes.hpp"
#include "recoil/core.hpp"
#include "recoil/density.hpp"
#include "recoil/kernels.hpp"

namespace recoil {

struct OdeRun {
  ModeGrid grid;
  Momentum momentum;
  cplx c_p{1.0, 0.0};
  double t_end = 0.0;
  std::vector<double> sample_times;  ///< ascending, within [0, t_end]; empty = {0, t_end}
  double tol = 1e-10;
  bool keep_cross_term = true;
  double coupling_scale = 1.0;       ///< multiplies every mode coupling
  /// Modes whose pairwise D block is copied into each sample. Empty keeps
  /// no D values; sector populations are always computed from the full state.
  std::vector<std::size_t> d_modes;
};

struct SectorPopulations {
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;

  double total() const noexcept { return a + b + d; }
};

struct Trajectory {
  std::vector<Mode> modes;
  std::vector<std::size_t> d_modes;
  std::vector<AmplitudeState> samples;      ///< d_vals sized d_modes^2
  std::vector<SectorPopulations> populations;
  double recurrence_time = 0.0;
  double max_norm_drift = 0.0;
  std::size_t rhs_evaluations = 0;

  /// D for the stored pair (i, j) of d_modes at sample s.
  cplx d(std::size_t s, std::size_t i, std::size_t j) const {
    return samples[s].d_vals[i * d_modes.size() + j];
  }
};

inline constexpr double min_tol = 1e-12;
inline constexpr double max_tol = 1e-6;
/// Comparisons are restricted to t below this fraction of the recurrence time.
inline constexpr double recurrence_margin = 0.8;

/// Adaptive Dormand-Prince integration of [A | B | D] from A = C_p, B = D = 0.
/// Throws ConfigError on bad preconditions, IntegratorError on step failure
/// or (with the cross term kept) norm drift above 10 tol.
Trajectory integrate_amplitudes(const OdeRun& run, const ModelParams& params,
                                Exec exec = Exec::parallel);

/// Max over samples of | |A|^2 / (|C_p|^2 e^{-2 gamma t}) - 1 |.
double max_decay_deviation(const Trajectory& traj, const ModelParams& params, cplx c_p);

/// Rate from a least-squares fit of ln|A|^2 = c - 2 rate t over the samples.
double fitted_decay_rate(const Trajectory& traj);

struct ClosedFormComparison {
  double a_rel_l2 = 0.0;
  double b_rel_l2 = 0.0;
  double d_rel_l2 = 0.0;  ///< over the stored d_modes block; 0 if none stored
};

/// Relative L2 distances, accumulated over every sample, between the
/// trajectory and the closed forms evaluated on the same modes.
ClosedFormComparison compare_closed_forms(const Trajectory& traj, const ModelParams& params,
                                          cplx c_p, Exec exec = Exec::parallel);

/// Relative L2 distance of the B sector between two trajectories sampled at
/// the same times on the same grid.
double b_sector_distance(const Trajectory& lhs, const Trajectory& rhs);

struct QuadratureOptions {
  std::size_t n_phi = 256;
  /// Recoil offset scale s in psi(x + s (sin phi + sin phi')); defaults to
  /// omega0 t / (2 mu).
  std::optional<double> offset_scale;
};

/// Periodic trapezoid over (phi, phi') of the unexpanded coherence integrand
///   (1/n^2) sum exp(-i u (sin phi - sin phi')) psi(x + delta, t) conj(psi(x' + delta, t)),
/// u = pi (x - x') / lambda, delta = s (sin phi + sin phi'). With s = 0 this
/// reduces to psi psi* J0^2(u). Throws ConfigError if n_phi < 128.
cplx density_quadrature(double x, double x2, double t, const FreeWavePacket& packet,
                        const ModelParams& params, const QuadratureOptions& options = {},
                        Exec exec = Exec::parallel);

struct RateCheck {
  double rate = 0.0;    ///< implied gamma / 2
  double target = 0.0;  ///< configured gamma / 2
  bool deficit = false; ///< rate < 0.9 target
  bool narrow_band = false;  ///< total bandwidth below 20 gamma

  double relative_error() const { return target > 0.0 ? rate / target - 1.0 : 0.0; }
};

/// sum_j g_j^2 (gamma/2) / ((k_j - k0)^2 + gamma^2/4) over the mode list.
RateCheck ww_rate_check(std::span<const Mode> modes, const ModelParams& params);
/// Grid form. A band narrower than 20 gamma is reported through
/// narrow_band rather than rejected, so the deficit stays observable.
RateCheck ww_rate_check(const ModeGrid& grid, const ModelParams& params);

}  // namespace recoil
