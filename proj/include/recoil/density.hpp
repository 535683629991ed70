#pragma once

// Free relative-motion wave packets, the J0^2 decoherence factor and the
// reduced spatial density matrix of the relative coordinate.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recoil/core.hpp"
#include "recoil/kernels.hpp"

namespace recoil {

struct GaussianPacket {
  double center = 0.0;
  double width = 1.0;  ///< position standard deviation d at t = 0
};

/// Standard deviation of |psi|^2 after free flight: sqrt(d^2 + (t / (2 mu d))^2).
double packet_width(double width, double t, const ModelParams& params);

/// Freely evolved normalized Gaussian
///   (2pi)^(-1/4) (d + i t/(2 mu d))^(-1/2) exp(-(1 - i t/(2 mu d^2)) (x-c)^2 / (4 d^2 + t^2/(mu^2 d^2))).
cplx gaussian_free(const GaussianPacket& packet, double x, double t, const ModelParams& params);

/// Equal-weight superposition of Gaussian packets, normalized exactly using
/// the analytic overlaps (free evolution preserves them).
class FreeWavePacket {
 public:
  explicit FreeWavePacket(std::vector<GaussianPacket> components);

  cplx operator()(double x, double t, const ModelParams& params) const;

  std::span<const GaussianPacket> components() const noexcept { return components_; }
  double amplitude() const noexcept { return amplitude_; }

 private:
  std::vector<GaussianPacket> components_;
  double amplitude_ = 1.0;
};

struct Scenario {
  enum class Kind { superposition, single };

  Kind kind = Kind::single;
  double a = 0.0;  ///< centre offset
  double d = 1.0;  ///< initial width

  /// (G_- + G_+)/sqrt(2): packets centred at +a and -a.
  static Scenario superposition(double a, double d);
  /// One packet centred at a.
  static Scenario single(double a, double d);

  std::vector<GaussianPacket> packets() const;
  FreeWavePacket wave() const;
  std::string name() const;
};

cplx psi_free(double x, double t, const Scenario& scenario, const ModelParams& params);

/// (2 pi)^(-1/2) sum_p C_p exp(i (p x - p^2 t / (2 mu))) dp. Throws
/// DomainError if C_p is not normalized to 1e-10.
cplx psi_from_momentum(double x, double t, const MomentumAmplitude& amplitude,
                       const ModelParams& params);

/// F(x, x') = J0^2(pi (x - x') / lambda).
double decoherence_factor(double x, double x2, const ModelParams& params);

struct SpatialGrid {
  double x_min = 0.0;
  double spacing = 1.0;
  std::size_t n = 0;

  /// Grid with x = 0 as a node, nodes at multiples of `spacing` out to
  /// +-half_extent (rounded to the nearest node).
  static SpatialGrid symmetric(double half_extent, double spacing);

  double x(std::size_t i) const noexcept { return x_min + static_cast<double>(i) * spacing; }
  double x_max() const noexcept { return x(n - 1); }
  double extent() const noexcept { return x_max() - x_min; }
  std::size_t nearest(double x) const;
};

/// Throws ConfigError unless spacing <= lambda/20 and every packet's
/// +-3 sigma window at `t_final` lies inside the grid.
void validate_grid(const SpatialGrid& grid, const Scenario& scenario, double t_final,
                   const ModelParams& params);

enum class Validity { ok, warn };

struct DensityGrid {
  SpatialGrid grid;
  double t = 0.0;
  bool emission = false;
  double lambda = 0.0;       ///< zero disables the resolution check in coherence_length
  double norm_factor = 1.0;  ///< N' applied after assembly
  Validity validity = Validity::ok;
  std::vector<cplx> rho;     ///< n x n, row-major

  std::size_t size() const noexcept { return grid.n; }
  cplx operator()(std::size_t i, std::size_t j) const { return rho[i * grid.n + j]; }
};

/// Hard and soft gates on gamma t when the emission factor is applied.
inline constexpr double validity_hard_gate = 1.0;
inline constexpr double validity_soft_gate = 5.0;

/// rho(x, x', t) = N' psi(x,t) psi*(x',t) F(x,x'), with F = 1 if emission is
/// off. Throws ValidityError if emission is on and gamma t < 1.
DensityGrid reduced_density(const SpatialGrid& grid, double t, const Scenario& scenario,
                            bool emission, const ModelParams& params,
                            Exec exec = Exec::parallel);

double trace(const DensityGrid& dg);
double purity(const DensityGrid& dg);
/// Standard deviation of the diagonal distribution.
double diagonal_width(const DensityGrid& dg);
/// sum |rho(x,x')| dx^2 over pairs with |x - x'| > band.
double off_diagonal_mass(const DensityGrid& dg, double band);
/// |rho(i,j)| / sqrt(rho(i,i) rho(j,j)); zero where a diagonal vanishes.
double normalized_coherence(const DensityGrid& dg, std::size_t i, std::size_t j);

struct CoherenceLength {
  enum class Status { ok, not_reached, too_coarse };

  double length = 0.0;  ///< grid extent when status != ok
  Status status = Status::ok;
};

/// Smallest separation dx at which |rho(x0 + dx/2, x0 - dx/2)| / rho(x0, x0)
/// drops below 1/e, linearly interpolated between grid nodes. x0 defaults to
/// the node with the largest diagonal entry. Spacing above lambda/4 gives
/// status too_coarse.
CoherenceLength coherence_length(const DensityGrid& dg,
                                 std::optional<std::size_t> center = std::nullopt);

/// Separation solving J0^2(pi dx / lambda) = 1/e: the emission-limited
/// coherence length of a packet much wider than lambda.
double factor_coherence_length(const ModelParams& params);

/// One DensityGrid per time. Every time is validated before any grid is built.
std::vector<DensityGrid> scenario_sweep(const Scenario& scenario, std::span<const double> times,
                                        bool emission, const SpatialGrid& grid,
                                        const ModelParams& params, Exec exec = Exec::parallel);

}  // namespace recoil
