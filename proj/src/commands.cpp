#include "recoil/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "recoil/errors.hpp"
#include "recoil/io.hpp"
#include "recoil/oracle.hpp"
#include "recoil/specfun.hpp"

namespace recoil {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

std::string_view status_name(CoherenceLength::Status s) {
  switch (s) {
    case CoherenceLength::Status::ok: return "ok";
    case CoherenceLength::Status::not_reached: return "not_reached";
    case CoherenceLength::Status::too_coarse: return "too_coarse";
  }
  return "ok";
}

struct Metric {
  std::string name;
  double value;
  double limit;
  bool gated;

  bool pass() const { return value <= limit; }
};

void write_report(const fs::path& path, const std::vector<Metric>& metrics, std::ostream& log) {
  std::string s = "metric,value,limit,status\n";
  for (const auto& m : metrics) {
    const std::string status = !m.gated ? "info" : (m.pass() ? "pass" : "fail");
    s += m.name + ',' + io::format_double(m.value) + ',' + io::format_double(m.limit) + ',' +
         status + '\n';
    log << "  " << m.name << " = " << m.value << " (limit " << m.limit << ", " << status
        << ")\n";
  }
  io::write_atomic(path, s);
}

void enforce(const std::vector<Metric>& metrics) {
  for (const auto& m : metrics) {
    if (m.gated && !m.pass()) throw ToleranceError(m.name, m.value, m.limit);
  }
}

std::vector<std::size_t> nearest_resonance(const std::vector<Mode>& modes, double k0,
                                           std::size_t count) {
  std::vector<std::size_t> idx(modes.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(modes[a].k - k0) < std::abs(modes[b].k - k0);
  });
  idx.resize(std::min(count, idx.size()));
  std::sort(idx.begin(), idx.end());
  return idx;
}

void oracle_amplitudes(const RunConfig& cfg, const ModelParams& p, std::ostream& log) {
  const auto& o = cfg.oracle;
  if (o.samples < 2) throw ConfigError("oracle.samples must be at least 2");
  OdeRun run;
  run.grid = cfg.mode_grid(p);
  run.momentum = o.momentum;
  run.t_end = o.t_end / p.gamma;
  run.tol = o.tol;
  run.keep_cross_term = o.keep_cross_term;
  for (std::size_t i = 0; i < o.samples; ++i) {
    run.sample_times.push_back(run.t_end * static_cast<double>(i) /
                               static_cast<double>(o.samples - 1));
  }
  run.d_modes = nearest_resonance(run.grid.modes(p), p.k0(), o.d_modes);

  const Trajectory traj = integrate_amplitudes(run, p);
  io::write_atomic(cfg.out_dir / "trajectory.csv", io::trajectory_csv(traj));
  const ClosedFormComparison cmp = compare_closed_forms(traj, p, run.c_p);
  const double rate_err = std::abs(fitted_decay_rate(traj) / p.gamma - 1.0);

  std::vector<Metric> m{
      {"decay_rate_rel_error", rate_err, o.rate_limit, true},
      {"norm_drift", traj.max_norm_drift, 10.0 * o.tol, o.keep_cross_term},
      {"closed_form_a_rel_l2", cmp.a_rel_l2, o.l2_limit, true},
      {"closed_form_b_rel_l2", cmp.b_rel_l2, o.l2_limit, true},
      {"closed_form_d_rel_l2", cmp.d_rel_l2, o.l2_limit, true},
      {"pointwise_decay_rel_dev", max_decay_deviation(traj, p, run.c_p), 0.05, false},
      {"recurrence_time_gamma", traj.recurrence_time * p.gamma, recurrence_margin, false},
  };
  log << "oracle amplitudes: " << traj.modes.size() << " modes, " << traj.rhs_evaluations
      << " rhs evaluations\n";
  write_report(cfg.out_dir / "oracle_amplitudes.csv", m, log);
  enforce(m);
}

void oracle_quadrature(const RunConfig& cfg, const ModelParams& p, std::ostream& log) {
  const auto& o = cfg.oracle;
  if (o.quad_points < 2) throw ConfigError("oracle.quad_points must be at least 2");
  const Scenario sc = cfg.make_scenario(p);
  const FreeWavePacket wave = sc.wave();
  const double t = o.quad_time / p.gamma;
  const double h = o.quad_half_extent * p.lambda;
  std::vector<double> xs(o.quad_points);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = -h + 2.0 * h * static_cast<double>(i) / static_cast<double>(xs.size() - 1);
  }
  QuadratureOptions zero{o.n_phi, 0.0};
  QuadratureOptions shifted{o.n_phi, o.offset_fraction * packet_width(sc.d, t, p)};

  std::string data = "x,x_prime,re_quad,im_quad,re_shifted,im_shifted,re_factor,im_factor\n";
  double scale = 0.0, dev0 = 0.0, dev1 = 0.0;
  std::vector<cplx> q0, q1, f;
  for (double x : xs) {
    for (double x2 : xs) {
      f.push_back(wave(x, t, p) * std::conj(wave(x2, t, p)) * decoherence_factor(x, x2, p));
      q0.push_back(density_quadrature(x, x2, t, wave, p, zero));
      q1.push_back(density_quadrature(x, x2, t, wave, p, shifted));
      scale = std::max(scale, std::abs(f.back()));
      for (double v : {x, x2, q0.back().real(), q0.back().imag(), q1.back().real(),
                       q1.back().imag(), f.back().real(), f.back().imag()}) {
        data += io::format_double(v);
        data += ',';
      }
      data.back() = '\n';
    }
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    dev0 = std::max(dev0, std::abs(q0[i] - f[i]) / scale);
    dev1 = std::max(dev1, std::abs(q1[i] - f[i]) / scale);
  }
  io::write_atomic(cfg.out_dir / "quadrature.csv", data);
  std::vector<Metric> m{{"factorization_max_rel_dev", dev0, o.factorization_limit, true},
                        {"offset_max_rel_dev", dev1, o.offset_limit, true}};
  log << "oracle quadrature: " << f.size() << " pairs, n_phi = " << o.n_phi << "\n";
  write_report(cfg.out_dir / "oracle_quadrature.csv", m, log);
  enforce(m);
}

void oracle_rate(const RunConfig& cfg, const ModelParams& p, std::ostream& log) {
  const ModeGrid grid = cfg.mode_grid(p);
  const RateCheck rc = ww_rate_check(grid, p);
  // rate deficit below 0.9 of gamma/2 is the gated condition.
  std::vector<Metric> m{{"rate_deficit", 1.0 - rc.rate / rc.target, 0.1, true},
                        {"rate_rel_error", std::abs(rc.relative_error()), 0.02, false},
                        {"rate_over_gamma", rc.rate / p.gamma, 0.5, false}};
  log << "oracle rate: " << grid.size() << " modes over " << cfg.modes.bandwidth << " gamma"
      << (rc.narrow_band ? " (narrower than 20 gamma)" : "") << "\n";
  write_report(cfg.out_dir / "oracle_rate.csv", m, log);
  enforce(m);
}

}  // namespace

OracleKind parse_oracle_kind(std::string_view name) {
  if (name == "amplitudes") return OracleKind::amplitudes;
  if (name == "quadrature") return OracleKind::quadrature;
  if (name == "rate") return OracleKind::rate;
  throw ConfigError("--which must be amplitudes, quadrature or rate");
}

void cmd_decoherence_factor(const RunConfig& cfg, std::ostream& log) {
  const ModelParams p = cfg.model();
  const auto& f = cfg.factor;
  if (f.points == 0) throw ConfigError("factor.points must be positive");
  if (!(f.max_dx_over_lambda > 0.0)) throw ConfigError("factor.max_dx_over_lambda must be positive");
  // Half-open range: the last row stops one step short of the maximum.
  std::vector<double> dx(f.points), values(f.points);
  const double step = f.max_dx_over_lambda / static_cast<double>(f.points);
  for (std::size_t i = 0; i < f.points; ++i) {
    dx[i] = static_cast<double>(i) * step;
    values[i] = decoherence_factor(dx[i] * p.lambda, 0.0, p);
  }
  ensure_dir(cfg.out_dir);
  io::write_atomic(cfg.out_dir / "decoherence_factor.csv", io::factor_csv(dx, values));
  log << "decoherence factor: " << f.points << " rows\n";
}

void cmd_evolve(const RunConfig& cfg, std::ostream& log) {
  const ModelParams p = cfg.model();
  const Scenario sc = cfg.make_scenario(p);
  const SpatialGrid grid = cfg.spatial_grid(p);
  std::vector<double> times;
  for (double tau : cfg.times) times.push_back(tau / p.gamma);

  std::vector<bool> flags;
  if (cfg.emission != EmissionSelect::on) flags.push_back(false);
  if (cfg.emission != EmissionSelect::off) flags.push_back(true);

  std::vector<std::vector<DensityGrid>> sweeps;
  if (!times.empty()) {
    for (bool e : flags) sweeps.push_back(scenario_sweep(sc, times, e, grid, p));
  } else {
    require_scenario_regime(p);
  }

  json summary;
  summary["generated"] = utc_now();
  summary["config"] = to_json(cfg);
  summary["lambda"] = p.lambda;
  summary["factor_coherence_length_over_lambda"] = factor_coherence_length(p) / p.lambda;
  summary["runs"] = json::array();
  std::vector<std::pair<std::string, std::string>> files;
  for (std::size_t s = 0; s < sweeps.size(); ++s) {
    for (std::size_t i = 0; i < times.size(); ++i) {
      const DensityGrid& dg = sweeps[s][i];
      const std::string name = "rho_t" + io::format_double(cfg.times[i]) + "_emission_" +
                               (dg.emission ? "on" : "off") + ".csv";
      if (dg.validity == Validity::warn) {
        log << "warning: gamma t = " << cfg.times[i]
            << " is below 5; the long-time density form is marginal\n";
      }
      const CoherenceLength cl = coherence_length(dg);
      summary["runs"].push_back({{"t_gamma", cfg.times[i]},
                                 {"emission", dg.emission ? "on" : "off"},
                                 {"file", name},
                                 {"trace", trace(dg)},
                                 {"purity", purity(dg)},
                                 {"coherence_length_over_lambda", cl.length / p.lambda},
                                 {"coherence_status", status_name(cl.status)},
                                 {"diagonal_width_over_lambda", diagonal_width(dg) / p.lambda},
                                 {"off_diagonal_mass", off_diagonal_mass(dg, p.lambda)},
                                 {"validity", dg.validity == Validity::ok ? "ok" : "warn"}});
      files.emplace_back(name, io::density_csv(dg));
    }
  }
  ensure_dir(cfg.out_dir);
  for (const auto& [name, content] : files) io::write_atomic(cfg.out_dir / name, content);
  io::write_atomic(cfg.out_dir / "summary.json", summary.dump(2) + "\n");
  log << "evolve: " << files.size() << " density files\n";
}

void cmd_oracle(const RunConfig& cfg, OracleKind which, std::ostream& log) {
  const ModelParams p = cfg.model();
  ensure_dir(cfg.out_dir);
  switch (which) {
    case OracleKind::amplitudes: oracle_amplitudes(cfg, p, log); break;
    case OracleKind::quadrature: oracle_quadrature(cfg, p, log); break;
    case OracleKind::rate: oracle_rate(cfg, p, log); break;
  }
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ValidityError*>(&e)) return 2;
  if (dynamic_cast<const ToleranceError*>(&e)) return 3;
  if (dynamic_cast<const IntegratorError*>(&e)) return 3;
  return 1;
}

}  // namespace recoil
