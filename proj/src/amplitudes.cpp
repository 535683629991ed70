#include "recoil/amplitudes.hpp"

#include <cmath>

#include "recoil/errors.hpp"

namespace recoil {

namespace {

constexpr cplx I{0.0, 1.0};

void require_time(double t) {
  if (!(t >= 0.0)) throw DomainError("amplitudes: time must be non-negative");
}

// Laplace-domain poles s of 1/(L + s) for each sector.
struct Poles {
  cplx a;  // i (omega_D - omega0)
  cplx b;  // i (omega_A - omega0) + gamma
  cplx c;  // i (omega_B(k) - omega0) + gamma/2
  cplx c2; // i (omega_B(k') - omega0) + gamma/2
};

Poles poles(const Mode& m1, const Mode& m2, Momentum m, const ModelParams& p) {
  const double w0 = p.omega0;
  return {I * (omega_d(m1.k, m1.phi, m2.k, m2.phi, m, p) - w0),
          I * (omega_a(m, p) - w0) + p.gamma,
          I * (omega_b(m1.k, m1.phi, m, p) - w0) + 0.5 * p.gamma,
          I * (omega_b(m2.k, m2.phi, m, p) - w0) + 0.5 * p.gamma};
}

// Inverse transform of 1 / ((L+a)(L+b)(L+c)).
cplx three_pole(cplx a, cplx b, cplx c, double t) {
  return std::exp(-a * t) / ((b - a) * (c - a)) + std::exp(-b * t) / ((a - b) * (c - b)) +
         std::exp(-c * t) / ((a - c) * (b - c));
}

}  // namespace

double AmplitudeState::population_a() const { return std::norm(a_val); }

double AmplitudeState::population_b() const {
  double s = 0.0;
  for (const auto& b : b_vals) s += std::norm(b);
  return 2.0 * s;
}

double AmplitudeState::population_d() const {
  double s = 0.0;
  for (const auto& d : d_vals) s += std::norm(d);
  return s;
}

cplx amplitude_a(Momentum m, double t, const ModelParams& params, cplx c_p) {
  require_time(t);
  const double detuning = omega_a(m, params) - params.omega0;
  return c_p * std::exp(-params.gamma * t) * std::polar(1.0, -detuning * t);
}

cplx amplitude_b(const Mode& mode, Momentum m, double t, const ModelParams& params, cplx c_p) {
  require_time(t);
  const cplx b = I * (omega_a(m, params) - params.omega0) + params.gamma;
  const cplx c = I * (omega_b(mode.k, mode.phi, m, params) - params.omega0) + 0.5 * params.gamma;
  return -I * mode.g * c_p * (std::exp(-c * t) - std::exp(-b * t)) / (b - c);
}

cplx amplitude_d(const Mode& mode, const Mode& mode2, Momentum m, double t,
                 const ModelParams& params, cplx c_p) {
  require_time(t);
  const Poles s = poles(mode, mode2, m, params);
  return -mode.g * mode2.g * c_p * (three_pole(s.a, s.b, s.c, t) + three_pole(s.a, s.b, s.c2, t));
}

cplx AsymptoticAmplitude::at(double t) const { return amplitude * std::polar(1.0, -phase_rate * t); }

AsymptoticAmplitude amplitude_d_infinity(const Mode& mode, const Mode& mode2, Momentum m,
                                         const ModelParams& params, cplx c_p, Recoil recoil) {
  AsymptoticAmplitude out;
  out.phase_rate = omega_d(mode.k, mode.phi, mode2.k, mode2.phi, m, params) - params.omega0;
  const cplx num = -mode.g * mode2.g * c_p;
  const double half = 0.5 * params.gamma;
  if (recoil == Recoil::kept) {
    const double wd = out.phase_rate + params.omega0;
    const cplx den1 = I * (omega_b(mode.k, mode.phi, m, params) - wd) + half;
    const cplx den2 = I * (omega_b(mode2.k, mode2.phi, m, params) - wd) + half;
    out.amplitude = num / (den1 * den2);
  } else {
    const double doppler = m.relative / (2.0 * params.mu) - m.total / params.cap_m;
    const cplx den1 = I * (params.omega0 - mode2.k - doppler * mode2.kick()) + half;
    const cplx den2 = I * (params.omega0 - mode.k - doppler * mode.kick()) + half;
    out.amplitude = num / (den1 * den2);
  }
  return out;
}

AmplitudeState closed_form_state(std::span<const Mode> modes, Momentum m, double t,
                                 const ModelParams& params, cplx c_p, Exec exec) {
  require_time(t);
  const std::size_t n = modes.size();
  AmplitudeState st;
  st.momentum = m;
  st.t = t;
  st.a_val = amplitude_a(m, t, params, c_p);
  st.b_vals.resize(n);
  st.d_vals.resize(n * n);
  const auto row = [&](std::size_t i) {
    st.b_vals[i] = amplitude_b(modes[i], m, t, params, c_p);
    for (std::size_t j = 0; j < n; ++j) {
      st.d_vals[i * n + j] = amplitude_d(modes[i], modes[j], m, t, params, c_p);
    }
  };
  if (exec == Exec::parallel) {
    const long long rows = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < rows; ++i) row(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) row(i);
  }
  return st;
}

}  // namespace recoil
