#pragma once

// Physical parameters, frequency bookkeeping and mode discretization.
//
// Units: hbar = c = 1 throughout. Frequencies and wavenumbers share a unit
// (omega_k = k), omega0 sets the frequency scale and 1/gamma the time scale.

#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace recoil {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Smallest omega0/gamma ratio accepted for density-matrix scenarios.
inline constexpr double min_frequency_ratio = 10.0;

struct ModelParams {
  double omega0 = 0.0;  ///< atomic transition frequency
  double gamma = 0.0;   ///< single-atom spontaneous decay rate
  double mu = 0.0;      ///< reduced mass m/2
  double cap_m = 0.0;   ///< total mass 2m = 4 mu
  double lambda = 0.0;  ///< radiation wavelength 2 pi c / omega0
  std::optional<double> dipole;

  double k0() const noexcept { return omega0; }
};

/// User-facing parameter set: either gamma or the dipole factor must be given.
struct ParamInputs {
  double omega0 = 1.0;
  std::optional<double> gamma;
  std::optional<double> dipole;
  double mu = 1.0;
};

/// Weisskopf-Wigner rate omega0^2 |d|^2 / (4 eps0 hbar c^2) with eps0 = hbar = c = 1.
double decay_rate(double omega0, double dipole);

/// Validates inputs and derives cap_m and lambda. Throws ConfigError.
ModelParams make_params(const ParamInputs& in);

/// Throws ConfigError unless omega0 / gamma >= min_frequency_ratio.
void require_scenario_regime(const ModelParams& params);

/// Relative (p) and total (P) momentum; the dynamics is diagonal in both.
struct Momentum {
  double relative = 0.0;
  double total = 0.0;
};

/// One discrete field mode. `g` is the mode's coupling including its
/// quadrature weight, so sums over modes approximate the continuum.
struct Mode {
  double k = 0.0;
  double phi = 0.0;
  double g = 0.0;

  /// Recoil momentum hbar k sin(phi) imparted along the atomic axis.
  double kick() const;
};

/// Coupling density g(k) = sqrt(gamma k / (2 pi k0)). Its square times 2 pi
/// reproduces gamma at resonance (golden rule), and it scales as sqrt(k).
double coupling_g(double k, const ModelParams& params);

double omega_a(Momentum m, const ModelParams& params);
double omega_b(double k, double phi, Momentum m, const ModelParams& params);
double omega_d(double k, double phi, double k2, double phi2, Momentum m,
               const ModelParams& params);

/// Uniform midpoint discretization of (k, phi) space around k0.
struct ModeGrid {
  std::vector<double> k_values;
  std::vector<double> k_weights;
  std::vector<double> phi_values;
  std::vector<double> phi_weights;  ///< sum to one
  double coupling_ref = 0.0;        ///< coupling_g(k0)

  /// `bandwidth` is the full width of the k window, centred on k0.
  static ModeGrid uniform(const ModelParams& params, std::size_t n_k, double bandwidth,
                          std::vector<double> phi_values = {0.0});

  std::size_t size() const noexcept { return k_values.size() * phi_values.size(); }
  double k_min() const;
  double k_max() const;
  double spacing() const;
  /// 2 pi / (mode spacing): time at which the discrete bath refeeds the atom.
  double recurrence_time() const;

  /// Flattened (k major, phi minor) mode list with weighted couplings.
  std::vector<Mode> modes(const ModelParams& params) const;
};

/// Relative-momentum wave function C_p sampled on a uniform p grid.
struct MomentumAmplitude {
  std::vector<double> p_values;
  std::vector<cplx> c_p;
  double cap_p = 0.0;

  double dp() const;
  /// Sum |C_p|^2 dp.
  double norm() const;

  /// Gaussian packet centred at `center` with position width `width`:
  /// C_p = (2 d^2 / pi)^(1/4) exp(-d^2 p^2) exp(-i p center).
  static MomentumAmplitude gaussian(double center, double width, std::size_t n,
                                    double half_range, double cap_p = 0.0);
};

}  // namespace recoil
