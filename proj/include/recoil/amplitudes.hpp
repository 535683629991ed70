#pragma once

// Weisskopf-Wigner closed forms for the three amplitude sectors of two
// initially excited atoms:
//   A(p,t)        both atoms excited, field in vacuum
//   B_k(p,t)      one atom decayed, one photon in mode k
//   D_kk'(p,t)    both atoms decayed, photons in modes k and k'
// All amplitudes are in the frame rotating at omega0 (the common factor
// exp(-i omega0 t) is dropped) and the Lamb shift is taken as zero.

#include <span>
#include <vector>

#include "recoil/core.hpp"
#include "recoil/kernels.hpp"

namespace recoil {

struct AmplitudeState {
  Momentum momentum;
  double t = 0.0;
  cplx a_val{0.0, 0.0};
  std::vector<cplx> b_vals;  ///< one per mode
  std::vector<cplx> d_vals;  ///< n x n ordered pairs, row-major

  std::size_t modes() const noexcept { return b_vals.size(); }
  cplx d(std::size_t i, std::size_t j) const { return d_vals[i * modes() + j]; }

  /// Probability in each sector: |A|^2, 2 sum |B|^2, sum |D|^2.
  double population_a() const;
  double population_b() const;
  double population_d() const;
  double sector_norm() const { return population_a() + population_b() + population_d(); }
};

/// A = C_p exp(-gamma t) exp(-i (omega_A - omega0) t). Throws DomainError for t < 0.
cplx amplitude_a(Momentum m, double t, const ModelParams& params, cplx c_p);

/// B_k = -i g C_p [exp(-(i dB + gamma/2) t) - exp(-(i dA + gamma) t)] / (i(omega_A - omega_B) + gamma/2)
/// with dX = omega_X - omega0.
cplx amplitude_b(const Mode& mode, Momentum m, double t, const ModelParams& params, cplx c_p);

/// Six-term inverse Laplace transform of the two-photon amplitude.
cplx amplitude_d(const Mode& mode, const Mode& mode2, Momentum m, double t,
                 const ModelParams& params, cplx c_p);

enum class Recoil { kept, neglected };

/// t -> infinity two-photon amplitude. The modulus is time independent; the
/// remaining phase exp(-i (omega_D - omega0) t) is carried separately.
struct AsymptoticAmplitude {
  cplx amplitude{0.0, 0.0};
  double phase_rate = 0.0;  ///< omega_D - omega0

  cplx at(double t) const;
};

/// `Recoil::kept` uses the exact omega_B - omega_D denominators. `neglected`
/// keeps only the Doppler shift (p/2mu - P/M) p_phi and drops recoil energies.
AsymptoticAmplitude amplitude_d_infinity(const Mode& mode, const Mode& mode2, Momentum m,
                                         const ModelParams& params, cplx c_p, Recoil recoil);

/// All three sectors on a mode list at one instant.
AmplitudeState closed_form_state(std::span<const Mode> modes, Momentum m, double t,
                                 const ModelParams& params, cplx c_p,
                                 Exec exec = Exec::parallel);

}  // namespace recoil
