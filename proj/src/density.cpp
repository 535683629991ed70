#include "recoil/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "recoil/errors.hpp"
#include "recoil/specfun.hpp"

namespace recoil {

namespace {

constexpr cplx I{0.0, 1.0};

double overlap(const GaussianPacket& g1, const GaussianPacket& g2) {
  const double s = g1.width * g1.width + g2.width * g2.width;
  const double dc = g1.center - g2.center;
  return std::sqrt(2.0 * g1.width * g2.width / s) * std::exp(-dc * dc / (4.0 * s));
}

}  // namespace

double packet_width(double width, double t, const ModelParams& params) {
  const double spread = t / (2.0 * params.mu * width);
  return std::sqrt(width * width + spread * spread);
}

cplx gaussian_free(const GaussianPacket& packet, double x, double t, const ModelParams& params) {
  const double d = packet.width;
  const double mu = params.mu;
  const double u = x - packet.center;
  const cplx front = std::pow(2.0 * pi, -0.25) / std::sqrt(cplx{d, t / (2.0 * mu * d)});
  const double denom = 4.0 * d * d + t * t / (mu * mu * d * d);
  const cplx expo = -(1.0 - I * (t / (2.0 * mu * d * d))) * (u * u / denom);
  return front * std::exp(expo);
}

FreeWavePacket::FreeWavePacket(std::vector<GaussianPacket> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw ConfigError("wave packet needs at least one component");
  double norm = 0.0;
  for (const auto& gi : components_) {
    if (!(gi.width > 0.0) || !std::isfinite(gi.width) || !std::isfinite(gi.center)) {
      throw ConfigError("wave packet component needs a finite centre and positive width");
    }
    for (const auto& gj : components_) norm += overlap(gi, gj);
  }
  amplitude_ = 1.0 / std::sqrt(norm);
}

cplx FreeWavePacket::operator()(double x, double t, const ModelParams& params) const {
  cplx s{0.0, 0.0};
  for (const auto& g : components_) s += gaussian_free(g, x, t, params);
  return amplitude_ * s;
}

Scenario Scenario::superposition(double a, double d) { return {Kind::superposition, a, d}; }
Scenario Scenario::single(double a, double d) { return {Kind::single, a, d}; }

std::vector<GaussianPacket> Scenario::packets() const {
  if (kind == Kind::superposition) return {{-a, d}, {a, d}};
  return {{a, d}};
}

FreeWavePacket Scenario::wave() const { return FreeWavePacket(packets()); }

std::string Scenario::name() const {
  return kind == Kind::superposition ? "superposition" : "single";
}

cplx psi_free(double x, double t, const Scenario& scenario, const ModelParams& params) {
  return scenario.wave()(x, t, params);
}

cplx psi_from_momentum(double x, double t, const MomentumAmplitude& amplitude,
                       const ModelParams& params) {
  const double norm = amplitude.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-8) {
    throw DomainError("momentum amplitude is not normalized (sum |C_p|^2 dp = " +
                      std::to_string(norm) + ")");
  }
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < amplitude.p_values.size(); ++i) {
    const double p = amplitude.p_values[i];
    s += amplitude.c_p[i] * std::polar(1.0, p * x - p * p * t / (2.0 * params.mu));
  }
  return s * amplitude.dp() / std::sqrt(2.0 * pi);
}

double decoherence_factor(double x, double x2, const ModelParams& params) {
  const double j = bessel_j0(pi * (x - x2) / params.lambda);
  return j * j;
}

SpatialGrid SpatialGrid::symmetric(double half_extent, double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw ConfigError("grid spacing must be positive");
  }
  if (!(half_extent >= spacing) || !std::isfinite(half_extent)) {
    throw ConfigError("grid half extent must be at least one spacing");
  }
  const auto m = static_cast<std::size_t>(std::llround(half_extent / spacing));
  return {-static_cast<double>(m) * spacing, spacing, 2 * m + 1};
}

std::size_t SpatialGrid::nearest(double x) const {
  const double r = std::round((x - x_min) / spacing);
  if (r <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(r), n - 1);
}

void validate_grid(const SpatialGrid& grid, const Scenario& scenario, double t_final,
                   const ModelParams& params) {
  if (grid.n < 3) throw ConfigError("spatial grid needs at least three nodes");
  const double max_spacing = params.lambda / 20.0;
  if (grid.spacing > max_spacing * (1.0 + 1e-9)) {
    throw ConfigError("grid spacing " + std::to_string(grid.spacing / params.lambda) +
                      " lambda exceeds lambda/20");
  }
  for (const auto& g : scenario.packets()) {
    const double s = packet_width(g.width, t_final, params);
    if (g.center - 3.0 * s < grid.x_min || g.center + 3.0 * s > grid.x_max()) {
      throw ConfigError("grid does not cover +-3 sigma of the packet at t = " +
                        std::to_string(t_final));
    }
  }
}

DensityGrid reduced_density(const SpatialGrid& grid, double t, const Scenario& scenario,
                            bool emission, const ModelParams& params, Exec exec) {
  require_scenario_regime(params);
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be non-negative");
  DensityGrid out;
  out.grid = grid;
  out.t = t;
  out.emission = emission;
  out.lambda = params.lambda;
  if (emission) {
    const double gt = params.gamma * t;
    if (gt < validity_hard_gate) {
      throw ValidityError("gamma t = " + std::to_string(gt) +
                          " is below 1; the long-time density form does not apply");
    }
    if (gt < validity_soft_gate) out.validity = Validity::warn;
  }

  const std::size_t n = grid.n;
  const FreeWavePacket wave = scenario.wave();
  std::vector<cplx> psi(n);
  for (std::size_t i = 0; i < n; ++i) psi[i] = wave(grid.x(i), t, params);
  std::vector<double> f(n, 1.0);
  if (emission) {
    for (std::size_t j = 0; j < n; ++j) {
      f[j] = decoherence_factor(static_cast<double>(j) * grid.spacing, 0.0, params);
    }
  }

  out.rho.resize(n * n);
  kernels::assemble_density(psi, f, out.rho, exec);
  const double tr = trace(out);
  if (!(tr > 0.0)) throw DomainError("density matrix has vanishing trace on this grid");
  out.norm_factor = 1.0 / tr;
  kernels::scale(out.rho, out.norm_factor, exec);
  return out;
}

double trace(const DensityGrid& dg) {
  double s = 0.0;
  for (std::size_t i = 0; i < dg.size(); ++i) s += dg(i, i).real();
  return s * dg.grid.spacing;
}

double purity(const DensityGrid& dg) {
  double s = 0.0;
  for (const auto& v : dg.rho) s += std::norm(v);
  return s * dg.grid.spacing * dg.grid.spacing;
}

double diagonal_width(const DensityGrid& dg) {
  double w = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < dg.size(); ++i) {
    const double r = dg(i, i).real();
    const double x = dg.grid.x(i);
    w += r;
    m1 += r * x;
    m2 += r * x * x;
  }
  const double mean = m1 / w;
  return std::sqrt(std::max(0.0, m2 / w - mean * mean));
}

double off_diagonal_mass(const DensityGrid& dg, double band) {
  const std::size_t n = dg.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(dg.grid.x(i) - dg.grid.x(j)) > band) s += std::abs(dg(i, j));
    }
  }
  return s * dg.grid.spacing * dg.grid.spacing;
}

double normalized_coherence(const DensityGrid& dg, std::size_t i, std::size_t j) {
  // Separate roots: the product of two tail diagonals underflows.
  const double den = std::sqrt(dg(i, i).real()) * std::sqrt(dg(j, j).real());
  if (!(den > 0.0)) return 0.0;
  return std::abs(dg(i, j)) / den;
}

CoherenceLength coherence_length(const DensityGrid& dg, std::optional<std::size_t> center) {
  const double extent = dg.grid.extent();
  // Coarser than lambda/4 cannot resolve the J0^2 envelope.
  if (dg.lambda > 0.0 && dg.grid.spacing > 0.25 * dg.lambda) return {extent, CoherenceLength::Status::too_coarse};
  std::size_t c = 0;
  if (center) {
    if (*center >= dg.size()) throw ConfigError("coherence centre outside grid");
    c = *center;
  } else {
    for (std::size_t i = 1; i < dg.size(); ++i) {
      if (dg(i, i).real() > dg(c, c).real()) c = i;
    }
  }
  const double ref = dg(c, c).real();
  if (!(ref > 0.0)) return {extent, CoherenceLength::Status::not_reached};
  const double threshold = std::exp(-1.0);
  double prev = 1.0;
  for (std::size_t m = 1; m <= c && c + m < dg.size(); ++m) {
    const double cur = std::abs(dg(c + m, c - m)) / ref;
    if (cur < threshold) {
      const double frac = (prev - threshold) / (prev - cur);
      return {2.0 * dg.grid.spacing * (static_cast<double>(m - 1) + frac),
              CoherenceLength::Status::ok};
    }
    prev = cur;
  }
  return {extent, CoherenceLength::Status::not_reached};
}

double factor_coherence_length(const ModelParams& params) {
  // J0 decreases monotonically on (0, first zero); bisect J0(u) = e^{-1/2}.
  const double target = std::exp(-0.5);
  double lo = 0.0, hi = 2.404825557695773;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (bessel_j0(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi) * params.lambda / pi;
}

std::vector<DensityGrid> scenario_sweep(const Scenario& scenario, std::span<const double> times,
                                        bool emission, const SpatialGrid& grid,
                                        const ModelParams& params, Exec exec) {
  if (times.empty()) throw ConfigError("scenario sweep needs at least one time");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) {
      throw ConfigError("times must be finite and non-negative");
    }
    if (i > 0 && !(times[i] > times[i - 1])) throw ConfigError("times must be strictly ascending");
  }
  require_scenario_regime(params);
  if (emission && params.gamma * times.front() < validity_hard_gate) {
    throw ValidityError("gamma t = " + std::to_string(params.gamma * times.front()) +
                        " is below 1; the long-time density form does not apply");
  }
  validate_grid(grid, scenario, times.back(), params);
  std::vector<DensityGrid> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(reduced_density(grid, t, scenario, emission, params, exec));
  return out;
}

}  // namespace recoil
