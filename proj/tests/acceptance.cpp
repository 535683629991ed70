// Acceptance run: one PASS/FAIL line per criterion, with measured values.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "recoil/amplitudes.hpp"
#include "recoil/density.hpp"
#include "recoil/oracle.hpp"
#include "recoil/specfun.hpp"

using namespace recoil;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ModelParams params(double gamma, double mu) {
  ParamInputs in;
  in.omega0 = 1.0;
  in.gamma = gamma;
  in.mu = mu;
  return make_params(in);
}

Outcome factor_curve() {
  Outcome o;
  const ModelParams p = params(0.01, 2000.0);
  o.require(decoherence_factor(0.0, 0.0, p) == 1.0, "F(0) = 1");
  const double f0 = decoherence_factor(2.404825558 * p.lambda / pi, 0.0, p);
  o.require(f0 < 1e-12, "F(zero) = " + fmt("%.2e", f0));
  const double j = j0_quadrature_oracle(1.0, 256);
  const double d = std::abs(decoherence_factor(p.lambda / pi, 0.0, p) - j * j);
  o.require(d <= 1e-10, "|F(lambda/pi) - quad| = " + fmt("%.2e", d));
  return o;
}

Outcome bessel_reduction() {
  Outcome o;
  const ModelParams p = params(0.01, 2000.0);
  const FreeWavePacket w = Scenario::superposition(2.0 * p.lambda, 0.25 * p.lambda).wave();
  const double t = 100.0 / p.gamma;
  double scale = 0.0, dev = 0.0;
  std::vector<cplx> f, q;
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      const double a = (-3.0 + 6.0 * i / 15.0) * p.lambda;
      const double b = (-3.0 + 6.0 * j / 15.0) * p.lambda;
      f.push_back(w(a, t, p) * std::conj(w(b, t, p)) * decoherence_factor(a, b, p));
      q.push_back(density_quadrature(a, b, t, w, p, {256, 0.0}));
      scale = std::max(scale, std::abs(f.back()));
    }
  }
  for (std::size_t k = 0; k < f.size(); ++k) dev = std::max(dev, std::abs(q[k] - f[k]) / scale);
  o.require(dev <= 1e-8, "max rel dev " + fmt("%.2e", dev));
  return o;
}

OdeRun oracle_run(const ModelParams& p, std::vector<double> phi) {
  OdeRun r;
  r.grid = ModeGrid::uniform(p, 400, 50.0 * p.gamma, std::move(phi));
  r.t_end = 5.0 / p.gamma;
  for (int i = 0; i <= 50; ++i) r.sample_times.push_back(0.1 * i / p.gamma);
  r.tol = 1e-10;
  return r;
}

Outcome ww_validation() {
  Outcome o;
  const ModelParams p = params(1e-4, 1e5);
  const OdeRun r = oracle_run(p, {0.0});
  const Trajectory tr = integrate_amplitudes(r, p);
  const double dev = max_decay_deviation(tr, p, r.c_p);
  o.require(dev <= 0.05, "max | |A|^2 e^{2 gamma t} - 1 | = " + fmt("%.4f", dev));
  o.require(tr.max_norm_drift <= 1e-8, "norm drift " + fmt("%.2e", tr.max_norm_drift));
  const double rate = fitted_decay_rate(tr) / p.gamma - 1.0;
  o.detail += "; fitted rate error " + fmt("%+.4f", rate) + " (info)";
  return o;
}

Outcome closed_forms() {
  Outcome o;
  const ModelParams p = params(1e-4, 1e5);
  OdeRun r = oracle_run(p, {pi / 6.0});
  r.momentum = {0.0, 30.0};
  for (std::size_t i = 196; i < 204; ++i) r.d_modes.push_back(i);
  const Trajectory tr = integrate_amplitudes(r, p);
  const ClosedFormComparison c = compare_closed_forms(tr, p, r.c_p);
  o.require(c.a_rel_l2 <= 0.05, "A L2 " + fmt("%.4f", c.a_rel_l2));
  o.require(c.b_rel_l2 <= 0.05, "B L2 " + fmt("%.4f", c.b_rel_l2));
  o.require(c.d_rel_l2 <= 0.05, "D(8 modes) L2 " + fmt("%.4f", c.d_rel_l2));

  double worst = 0.0;
  const double t = 30.0 / p.gamma;
  for (std::size_t i : r.d_modes) {
    for (std::size_t j : r.d_modes) {
      const Mode& m1 = tr.modes[i];
      const Mode& m2 = tr.modes[j];
      const double d = std::abs(amplitude_d(m1, m2, r.momentum, t, p, r.c_p));
      const double inf =
          std::abs(amplitude_d_infinity(m1, m2, r.momentum, p, r.c_p, Recoil::kept).amplitude);
      worst = std::max(worst, std::abs(d - inf) / inf);
    }
  }
  o.require(worst <= 1e-6, "|D(30/gamma)| vs |D_inf| " + fmt("%.2e", worst));
  return o;
}

Outcome free_evolution() {
  Outcome o;
  const ModelParams p = params(0.01, 10.0);
  const Scenario sc = Scenario::single(0.0, 0.5 * p.lambda);
  const FreeWavePacket w = sc.wave();
  double res_worst = 0.0, norm_worst = 0.0, width_worst = 0.0;
  for (double tau : {2.0, 3.0, 5.0}) {
    const double t = tau / p.gamma;
    const double s = packet_width(sc.d, t, p);
    const double lo = -12.0 * s, h = 24.0 * s / 6000.0;
    double n0 = 0.0, m2 = 0.0;
    for (int i = 0; i <= 6000; ++i) {
      const double x = lo + i * h;
      const double wgt = (i == 0 || i == 6000) ? 0.5 : 1.0;
      const double rho = std::norm(w(x, t, p));
      n0 += wgt * rho * h;
      m2 += wgt * x * x * rho * h;
    }
    norm_worst = std::max(norm_worst, std::abs(n0 - 1.0));
    width_worst = std::max(width_worst, std::abs(std::sqrt(m2 / n0) / s - 1.0));

    const double dx = 0.01 * s, dt = 1e-3 * t;
    double peak = 0.0, worst = 0.0;
    for (int i = -200; i <= 200; ++i) {
      const double x = 0.02 * i * s;
      const auto at = [&](double xx, double tt) { return w(xx, tt, p); };
      const cplx d_t = (-at(x, t + 2 * dt) + 8.0 * at(x, t + dt) - 8.0 * at(x, t - dt) +
                        at(x, t - 2 * dt)) / (12.0 * dt);
      const cplx d_xx = (-at(x + 2 * dx, t) + 16.0 * at(x + dx, t) - 30.0 * at(x, t) +
                         16.0 * at(x - dx, t) - at(x - 2 * dx, t)) / (12.0 * dx * dx);
      worst = std::max(worst, std::abs(cplx{0.0, 1.0} * d_t + d_xx / (2.0 * p.mu)));
      peak = std::max(peak, std::abs(at(x, t)));
    }
    res_worst = std::max(res_worst, worst / peak);
  }
  o.require(res_worst <= 1e-4, "residual/max|psi| " + fmt("%.2e", res_worst));
  o.require(norm_worst <= 1e-8, "norm error " + fmt("%.2e", norm_worst));
  o.require(width_worst <= 1e-6, "width rel error " + fmt("%.2e", width_worst));
  return o;
}

double coherence_vs_factor(const DensityGrid& dg, const ModelParams& p) {
  double worst = 0.0;
  for (std::size_t i = 0; i < dg.size(); ++i) {
    for (std::size_t j = 0; j < dg.size(); ++j) {
      if (dg(i, i).real() > 1e-200 && dg(j, j).real() > 1e-200) {
        worst = std::max(worst, std::abs(normalized_coherence(dg, i, j) -
                                         decoherence_factor(dg.grid.x(i), dg.grid.x(j), p)));
      }
    }
  }
  return worst;
}

Outcome localization() {
  Outcome o;
  // Fig. 3 and Fig. 4 default sweeps.
  const ModelParams p3 = params(0.01, 2000.0);
  const Scenario s3 = Scenario::superposition(2.0 * p3.lambda, 0.25 * p3.lambda);
  const SpatialGrid g3 = SpatialGrid::symmetric(12.0 * p3.lambda, 0.05 * p3.lambda);
  const std::vector<double> t3{100.0 / p3.gamma, 200.0 / p3.gamma, 1000.0 / p3.gamma};
  const auto on3 = scenario_sweep(s3, t3, true, g3, p3);
  const auto off3 = scenario_sweep(s3, t3, false, g3, p3);
  const ModelParams p4 = params(0.01, 10.0);
  const Scenario s4 = Scenario::single(0.0, 0.5 * p4.lambda);
  const SpatialGrid g4 = SpatialGrid::symmetric(6.0 * p4.lambda, 0.05 * p4.lambda);
  const std::vector<double> t4{2.0 / p4.gamma, 3.0 / p4.gamma, 5.0 / p4.gamma};
  const auto on4 = scenario_sweep(s4, t4, true, g4, p4);

  double coh = 0.0;
  for (const auto& dg : on3) coh = std::max(coh, coherence_vs_factor(dg, p3));
  for (const auto& dg : on4) coh = std::max(coh, coherence_vs_factor(dg, p4));
  o.require(coh <= 1e-12, "(a) |coherence - F| " + fmt("%.2e", coh));

  const double ratio =
      off_diagonal_mass(on3.back(), p3.lambda) / off_diagonal_mass(off3.back(), p3.lambda);
  o.require(ratio < 0.05, "(b) off-diagonal mass on/off " + fmt("%.4f", ratio));

  const double target = factor_coherence_length(p3);
  double spread = 0.0;
  bool grows = true;
  for (double d_lambda : {0.25, 0.5, 1.0}) {
    const Scenario sc = Scenario::single(0.0, d_lambda * p3.lambda);
    const double sigma = packet_width(sc.d, t3.back(), p3);
    const double half = std::ceil(3.0 * sigma / p3.lambda) + 1.0;
    const SpatialGrid g = SpatialGrid::symmetric(half * p3.lambda, 0.05 * p3.lambda);
    const auto on = scenario_sweep(sc, t3, true, g, p3);
    const auto off = scenario_sweep(sc, t3, false, g, p3);
    const CoherenceLength cl = coherence_length(on.back());
    spread = std::max(spread, std::abs(cl.length / target - 1.0));
    if (cl.status != CoherenceLength::Status::ok) spread = 1.0;
    double prev = 0.0;
    for (const auto& dg : off) {
      const CoherenceLength c = coherence_length(dg);
      grows = grows && c.status == CoherenceLength::Status::ok && c.length > prev;
      prev = c.length;
    }
  }
  o.require(spread <= 0.10, "(c) coherence length vs " + fmt("%.5f", target / p3.lambda) +
                                " lambda, worst " + fmt("%.4f", spread));
  o.require(grows, "(c) grows without emission");
  return o;
}

int run_cli(const std::string& args) {
  const std::string cmd = RECOILSIM_PATH " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_outputs(const fs::path& a, const fs::path& b) {
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    const fs::path other = b / e.path().filename();
    if (!fs::exists(other)) return false;
    if (e.path().extension() == ".json") {
      auto ja = nlohmann::json::parse(slurp(e.path()));
      auto jb = nlohmann::json::parse(slurp(other));
      ja.erase("generated");
      jb.erase("generated");
      if (ja != jb) return false;
    } else if (slurp(e.path()) != slurp(other)) {
      return false;
    }
    ++files;
  }
  return files > 0;
}

std::string header(const fs::path& p) {
  const std::string s = slurp(p);
  return s.substr(0, s.find('\n'));
}

Outcome cli_contract() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "recoil_acceptance";
  fs::remove_all(root);
  struct Case {
    std::string name, args, file, head;
  };
  const std::vector<Case> cases{
      {"factor", "decoherence-factor", "decoherence_factor.csv", "dx_over_lambda,F"},
      {"fig3", "evolve --preset fig3", "rho_t1000_emission_on.csv", "x,x_prime,re_rho,im_rho,abs_rho"},
      {"fig4", "evolve --preset fig4", "rho_t5_emission_off.csv", "x,x_prime,re_rho,im_rho,abs_rho"},
      {"quad", "oracle --which quadrature", "oracle_quadrature.csv", "metric,value,limit,status"},
      {"rate", "oracle --which rate", "oracle_rate.csv", "metric,value,limit,status"},
      {"amp", "oracle --which amplitudes", "trajectory.csv", "t,re_a,im_a,norm,pop_a,pop_b,pop_d"},
  };
  for (const auto& c : cases) {
    const fs::path a = root / (c.name + "_a"), b = root / (c.name + "_b");
    const int ea = run_cli(c.args + " --out " + a.string());
    const int eb = run_cli(c.args + " --out " + b.string());
    const bool ok = ea == 0 && eb == 0 && same_outputs(a, b) && header(a / c.file) == c.head;
    o.require(ok, c.name + (ok ? " ok" : " exit " + std::to_string(ea)));
  }
  const fs::path gate = root / "gate";
  const int e2 = run_cli("evolve --preset fig4 --times 0.5 --emission on --out " + gate.string());
  o.require(e2 == 2 && !fs::exists(gate), "validity gate exit " + std::to_string(e2));
  {
    std::ofstream(root / "narrow.json") << R"({"modes": {"bandwidth": 4}})";
  }
  const int e3 = run_cli("oracle --which rate --config " + (root / "narrow.json").string() +
                         " --out " + (root / "narrow").string());
  o.require(e3 == 3, "rate deficit exit " + std::to_string(e3));
  {
    std::ofstream(root / "bad.json") << R"({"unknown": 1})";
  }
  const int e1 = run_cli("evolve --config " + (root / "bad.json").string() + " --out " +
                         (root / "bad").string());
  o.require(e1 == 1, "config error exit " + std::to_string(e1));
  fs::remove_all(root);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "decoherence-factor curve", 1.0, factor_curve},
      {2, "Bessel reduction of the angular integral", 10.0, bessel_reduction},
      {3, "Weisskopf-Wigner decay from the discrete-mode ODE", 60.0, ww_validation},
      {4, "closed-form amplitudes vs ODE", 60.0, closed_forms},
      {5, "free evolution of the Gaussian packet", 5.0, free_evolution},
      {6, "localization", 120.0, localization},
      {7, "CLI contract", 0.0, cli_contract},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0) o.require(secs < c.budget_s, "runtime budget " + fmt("%.0f s", c.budget_s));
    failures += o.pass ? 0 : 1;
    std::printf("[%s] criterion %d: %s (%.2f s) -- %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
