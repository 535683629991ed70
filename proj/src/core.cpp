#include "recoil/core.hpp"

#include <cmath>
#include <string>

#include "recoil/errors.hpp"

namespace recoil {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

double decay_rate(double omega0, double dipole) {
  if (!std::isfinite(omega0) || !std::isfinite(dipole)) {
    throw DomainError("decay_rate: non-finite input");
  }
  return omega0 * omega0 * dipole * dipole / 4.0;
}

ModelParams make_params(const ParamInputs& in) {
  if (!positive_finite(in.omega0)) throw ConfigError("params.omega0 must be positive");
  if (!positive_finite(in.mu)) throw ConfigError("params.mu must be positive");

  ModelParams p;
  p.omega0 = in.omega0;
  p.mu = in.mu;
  p.cap_m = 4.0 * in.mu;
  p.lambda = 2.0 * pi / in.omega0;
  p.dipole = in.dipole;

  if (in.gamma) {
    p.gamma = *in.gamma;
  } else if (in.dipole) {
    p.gamma = decay_rate(in.omega0, *in.dipole);
  } else {
    throw ConfigError("params: either gamma or dipole must be supplied");
  }
  if (!positive_finite(p.gamma)) throw ConfigError("params.gamma must be positive");
  return p;
}

void require_scenario_regime(const ModelParams& params) {
  if (params.omega0 / params.gamma < min_frequency_ratio) {
    throw ConfigError("omega0/gamma = " + std::to_string(params.omega0 / params.gamma) +
                      " is below the required ratio of 10");
  }
}

double Mode::kick() const { return k * std::sin(phi); }

double coupling_g(double k, const ModelParams& params) {
  if (!(k > 0.0)) throw DomainError("coupling_g: wavenumber must be positive");
  return std::sqrt(params.gamma * k / (2.0 * pi * params.k0()));
}

double omega_a(Momentum m, const ModelParams& params) {
  return m.total * m.total / (2.0 * params.cap_m) +
         m.relative * m.relative / (2.0 * params.mu) + params.omega0;
}

double omega_b(double k, double phi, Momentum m, const ModelParams& params) {
  const double kick = k * std::sin(phi);
  const double cm = m.total - kick;
  const double rel = m.relative - 0.5 * kick;
  return cm * cm / (2.0 * params.cap_m) + rel * rel / (2.0 * params.mu) + k;
}

double omega_d(double k, double phi, double k2, double phi2, Momentum m,
               const ModelParams& params) {
  const double kick = k * std::sin(phi);
  const double kick2 = k2 * std::sin(phi2);
  const double cm = m.total - kick - kick2;
  const double rel = m.relative - 0.5 * kick + 0.5 * kick2;
  return cm * cm / (2.0 * params.cap_m) + rel * rel / (2.0 * params.mu) + k + k2 -
         params.omega0;
}

ModeGrid ModeGrid::uniform(const ModelParams& params, std::size_t n_k, double bandwidth,
                           std::vector<double> phi_values) {
  if (n_k == 0) throw ConfigError("mode grid needs at least one k value");
  if (!positive_finite(bandwidth)) throw ConfigError("mode grid bandwidth must be positive");
  if (bandwidth / 2.0 >= params.k0()) {
    throw ConfigError("mode grid bandwidth reaches k <= 0");
  }
  if (phi_values.empty()) throw ConfigError("mode grid needs at least one angle");

  ModeGrid grid;
  const double dk = bandwidth / static_cast<double>(n_k);
  const double k_lo = params.k0() - bandwidth / 2.0;
  grid.k_values.resize(n_k);
  grid.k_weights.assign(n_k, dk);
  for (std::size_t i = 0; i < n_k; ++i) {
    grid.k_values[i] = k_lo + (static_cast<double>(i) + 0.5) * dk;
  }
  grid.phi_weights.assign(phi_values.size(), 1.0 / static_cast<double>(phi_values.size()));
  grid.phi_values = std::move(phi_values);
  grid.coupling_ref = coupling_g(params.k0(), params);
  return grid;
}

double ModeGrid::k_min() const { return k_values.front() - 0.5 * k_weights.front(); }
double ModeGrid::k_max() const { return k_values.back() + 0.5 * k_weights.back(); }
double ModeGrid::spacing() const { return k_weights.front(); }
double ModeGrid::recurrence_time() const { return 2.0 * pi / spacing(); }

std::vector<Mode> ModeGrid::modes(const ModelParams& params) const {
  std::vector<Mode> out;
  out.reserve(size());
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    const double gk = coupling_g(k_values[i], params);
    for (std::size_t j = 0; j < phi_values.size(); ++j) {
      out.push_back({k_values[i], phi_values[j], gk * std::sqrt(k_weights[i] * phi_weights[j])});
    }
  }
  return out;
}

double MomentumAmplitude::dp() const {
  return p_values.size() > 1 ? p_values[1] - p_values[0] : 0.0;
}

double MomentumAmplitude::norm() const {
  double s = 0.0;
  for (const auto& c : c_p) s += std::norm(c);
  return s * dp();
}

MomentumAmplitude MomentumAmplitude::gaussian(double center, double width, std::size_t n,
                                              double half_range, double cap_p) {
  if (!positive_finite(width)) throw DomainError("gaussian amplitude: width must be positive");
  if (n < 2 || !positive_finite(half_range)) {
    throw DomainError("gaussian amplitude: need n >= 2 and a positive range");
  }
  MomentumAmplitude out;
  out.cap_p = cap_p;
  out.p_values.resize(n);
  out.c_p.resize(n);
  const double step = 2.0 * half_range / static_cast<double>(n - 1);
  const double amp = std::pow(2.0 * width * width / pi, 0.25);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = -half_range + static_cast<double>(i) * step;
    out.p_values[i] = p;
    out.c_p[i] = amp * std::exp(-width * width * p * p) * std::polar(1.0, -p * center);
  }
  return out;
}

}  // namespace recoil
