#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <string>

#include "recoil/errors.hpp"
#include "recoil/oracle.hpp"

namespace recoil {

namespace {

namespace ode = boost::numeric::odeint;
using State = std::vector<cplx>;

struct Rhs {
  const kernels::AmplitudeSystem* sys;
  Exec exec;
  std::size_t* evaluations;

  void operator()(const State& x, State& dxdt, double /*t*/) const {
    ++*evaluations;
    kernels::amplitude_rhs(*sys, x, dxdt, exec);
  }
};

kernels::AmplitudeSystem build_system(std::span<const Mode> modes, const OdeRun& run,
                                      const ModelParams& params) {
  const std::size_t n = modes.size();
  const double w0 = params.omega0;
  kernels::AmplitudeSystem sys;
  sys.n = n;
  sys.keep_cross_term = run.keep_cross_term;
  sys.detuning_a = omega_a(run.momentum, params) - w0;
  sys.detuning_b.resize(n);
  sys.coupling.resize(n);
  sys.detuning_d.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    sys.detuning_b[i] = omega_b(modes[i].k, modes[i].phi, run.momentum, params) - w0;
    sys.coupling[i] = modes[i].g * run.coupling_scale;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double dij = omega_d(modes[i].k, modes[i].phi, modes[j].k, modes[j].phi,
                                 run.momentum, params);
      const double dji = omega_d(modes[j].k, modes[j].phi, modes[i].k, modes[i].phi,
                                 run.momentum, params);
      const double sym = 0.5 * (dij + dji) - w0;
      sys.detuning_d[i * n + j] = sym;
      sys.detuning_d[j * n + i] = sym;
    }
  }
  return sys;
}

void check_run(const OdeRun& run, const ModelParams& params, std::vector<double>& times) {
  if (run.grid.size() == 0) throw ConfigError("oracle: mode grid is empty");
  if (!(run.tol >= min_tol && run.tol <= max_tol)) {
    throw ConfigError("oracle: tol must lie in [1e-12, 1e-6]");
  }
  const double side = 10.0 * params.gamma * (1.0 - 1e-9);
  if (params.k0() - run.grid.k_min() < side || run.grid.k_max() - params.k0() < side) {
    throw ConfigError("oracle: mode grid must extend 10 gamma on each side of k0");
  }
  if (!(run.t_end > 0.0) || !std::isfinite(run.t_end)) {
    throw ConfigError("oracle: t_end must be positive");
  }
  if (run.t_end >= recurrence_margin * run.grid.recurrence_time()) {
    throw ConfigError("oracle: t_end reaches 0.8 of the recurrence time " +
                      std::to_string(run.grid.recurrence_time()));
  }
  times = run.sample_times.empty() ? std::vector<double>{0.0, run.t_end} : run.sample_times;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || times[i] > run.t_end * (1.0 + 1e-12) ||
        (i > 0 && !(times[i] > times[i - 1]))) {
      throw ConfigError("oracle: sample times must ascend within [0, t_end]");
    }
  }
  for (std::size_t m : run.d_modes) {
    if (m >= run.grid.size()) throw ConfigError("oracle: d_modes index out of range");
  }
}

struct Recorder {
  const OdeRun& run;
  Trajectory& traj;
  std::size_t n;

  void operator()(const State& x, double t) {
    const cplx* b = x.data() + 1;
    const cplx* d1 = x.data() + 1 + n;
    SectorPopulations pop;
    pop.a = std::norm(x[0]);
    for (std::size_t i = 0; i < n; ++i) pop.b += std::norm(b[i]);
    pop.b *= 2.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) pop.d += std::norm(d1[i * n + j] + d1[j * n + i]);
    }
    AmplitudeState st;
    st.momentum = run.momentum;
    st.t = t;
    st.a_val = x[0];
    st.b_vals.assign(b, b + n);
    const std::size_t m = run.d_modes.size();
    st.d_vals.resize(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t p = run.d_modes[i], q = run.d_modes[j];
        st.d_vals[i * m + j] = d1[p * n + q] + d1[q * n + p];
      }
    }
    traj.samples.push_back(std::move(st));
    traj.populations.push_back(pop);
  }
};

}  // namespace

Trajectory integrate_amplitudes(const OdeRun& run, const ModelParams& params, Exec exec) {
  std::vector<double> times;
  check_run(run, params, times);

  Trajectory traj;
  traj.modes = run.grid.modes(params);
  traj.d_modes = run.d_modes;
  traj.recurrence_time = run.grid.recurrence_time();
  const std::size_t n = traj.modes.size();
  const kernels::AmplitudeSystem sys = build_system(traj.modes, run, params);

  State x(sys.dimension(), cplx{0.0, 0.0});
  x[0] = run.c_p;
  Rhs rhs{&sys, exec, &traj.rhs_evaluations};
  Recorder record{run, traj, n};

  // Relative tolerance drives accuracy; the absolute floor only matters for
  // amplitudes many orders below |C_p|.
  const double scale = std::abs(run.c_p);
  auto stepper = ode::make_controlled(run.tol * 1e-2 * scale, run.tol,
                                      ode::runge_kutta_fehlberg78<State>());

  double t = 0.0;
  double dt = 0.05 / params.gamma;
  const double dt_floor = 1e-12 * run.t_end;
  constexpr int max_rejects = 500;
  for (double target : times) {
    while (target - t > 1e-14 * run.t_end) {
      const bool truncated = dt > target - t;
      double h = truncated ? target - t : dt;
      int rejects = 0;
      try {
        while (stepper.try_step(rhs, x, t, h) == ode::fail) {
          if (++rejects > max_rejects || h < dt_floor) {
            throw IntegratorError("oracle: step size underflow (stiffness) at t = " +
                                      std::to_string(t),
                                  t);
          }
        }
      } catch (const ode::odeint_error& e) {
        throw IntegratorError(std::string("oracle: ") + e.what() + " at t = " + std::to_string(t),
                              t);
      }
      if (!std::isfinite(std::norm(x[0]))) {
        throw IntegratorError("oracle: non-finite state at t = " + std::to_string(t), t);
      }
      dt = truncated ? std::max(dt, h) : h;
    }
    t = target;
    record(x, t);
  }

  const double n0 = std::norm(run.c_p);
  for (const auto& pop : traj.populations) {
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(pop.total() - n0));
  }
  if (run.keep_cross_term && traj.max_norm_drift > 10.0 * run.tol * std::max(1.0, n0)) {
    double worst_t = 0.0;
    for (std::size_t s = 0; s < traj.populations.size(); ++s) {
      if (std::abs(traj.populations[s].total() - n0) == traj.max_norm_drift) {
        worst_t = traj.samples[s].t;
      }
    }
    throw IntegratorError("oracle: norm drift " + std::to_string(traj.max_norm_drift) +
                              " exceeds 10 tol",
                          worst_t);
  }
  return traj;
}

double max_decay_deviation(const Trajectory& traj, const ModelParams& params, cplx c_p) {
  const double n0 = std::norm(c_p);
  double worst = 0.0;
  for (const auto& s : traj.samples) {
    const double ref = n0 * std::exp(-2.0 * params.gamma * s.t);
    worst = std::max(worst, std::abs(std::norm(s.a_val) / ref - 1.0));
  }
  return worst;
}

double fitted_decay_rate(const Trajectory& traj) {
  const std::size_t n = traj.samples.size();
  if (n < 2) throw ConfigError("decay fit needs at least two samples");
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (const auto& s : traj.samples) {
    const double y = std::log(std::norm(s.a_val));
    st += s.t;
    sy += y;
    stt += s.t * s.t;
    sty += s.t * y;
  }
  const double dn = static_cast<double>(n);
  const double slope = (dn * sty - st * sy) / (dn * stt - st * st);
  return -0.5 * slope;
}

ClosedFormComparison compare_closed_forms(const Trajectory& traj, const ModelParams& params,
                                          cplx c_p, Exec exec) {
  ClosedFormComparison out;
  double ea = 0.0, ra = 0.0, eb = 0.0, rb = 0.0, ed = 0.0, rd = 0.0;
  std::vector<Mode> d_list;
  for (std::size_t m : traj.d_modes) d_list.push_back(traj.modes[m]);
  const std::size_t m = d_list.size();
  for (std::size_t s = 0; s < traj.samples.size(); ++s) {
    const AmplitudeState& st = traj.samples[s];
    const cplx a = amplitude_a(st.momentum, st.t, params, c_p);
    ea += std::norm(st.a_val - a);
    ra += std::norm(a);
    for (std::size_t k = 0; k < traj.modes.size(); ++k) {
      const cplx b = amplitude_b(traj.modes[k], st.momentum, st.t, params, c_p);
      eb += std::norm(st.b_vals[k] - b);
      rb += std::norm(b);
    }
    if (m > 0) {
      const AmplitudeState cf = closed_form_state(d_list, st.momentum, st.t, params, c_p, exec);
      for (std::size_t i = 0; i < m * m; ++i) {
        ed += std::norm(st.d_vals[i] - cf.d_vals[i]);
        rd += std::norm(cf.d_vals[i]);
      }
    }
  }
  out.a_rel_l2 = std::sqrt(ea / ra);
  out.b_rel_l2 = rb > 0.0 ? std::sqrt(eb / rb) : 0.0;
  out.d_rel_l2 = rd > 0.0 ? std::sqrt(ed / rd) : 0.0;
  return out;
}

double b_sector_distance(const Trajectory& lhs, const Trajectory& rhs) {
  if (lhs.samples.size() != rhs.samples.size() || lhs.modes.size() != rhs.modes.size()) {
    throw ConfigError("b_sector_distance: trajectories differ in shape");
  }
  double e = 0.0, r = 0.0;
  for (std::size_t s = 0; s < lhs.samples.size(); ++s) {
    for (std::size_t k = 0; k < lhs.modes.size(); ++k) {
      e += std::norm(lhs.samples[s].b_vals[k] - rhs.samples[s].b_vals[k]);
      r += std::norm(rhs.samples[s].b_vals[k]);
    }
  }
  return r > 0.0 ? std::sqrt(e / r) : 0.0;
}

}  // namespace recoil
