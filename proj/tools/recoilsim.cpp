// recoilsim: decoherence-factor | evolve | oracle

#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "recoil/commands.hpp"
#include "recoil/config.hpp"
#include "recoil/errors.hpp"

namespace {

void apply_thread_cap() {
  const char* env = std::getenv("SIM_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw recoil::ConfigError("SIM_THREADS must be a positive integer");
  omp_set_num_threads(static_cast<int>(n));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recoil-induced decoherence of two emitting atoms"};
  app.require_subcommand(1);

  std::string config_path, out_dir, emission, times, which, preset;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--preset", preset, "Named defaults: fig2, fig3, fig4, oracle");
  };
  auto* factor = app.add_subcommand("decoherence-factor", "Tabulate F = J0^2(pi dx / lambda)");
  common(factor);
  auto* evolve = app.add_subcommand("evolve", "Reduced density matrices over a time sweep");
  common(evolve);
  evolve->add_option("--emission", emission, "on, off or both")
      ->check(CLI::IsMember({"on", "off", "both"}));
  evolve->add_option("--times", times, "Comma list of times in units of 1/gamma");
  auto* oracle = app.add_subcommand("oracle", "Run a brute-force validator");
  common(oracle);
  oracle->add_option("--which", which, "amplitudes, quadrature or rate")
      ->required()
      ->check(CLI::IsMember({"amplitudes", "quadrature", "rate"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    apply_thread_cap();
    std::string default_preset = "fig3";
    if (factor->parsed()) default_preset = "fig2";
    if (oracle->parsed()) default_preset = "oracle";
    if (!preset.empty()) default_preset = preset;

    recoil::RunConfig cfg = config_path.empty()
                                ? recoil::parse_config(nlohmann::json::object(), default_preset)
                                : recoil::load_config(config_path, default_preset);
    if (!preset.empty() && !config_path.empty() && cfg.preset != preset) {
      throw recoil::ConfigError("--preset conflicts with the preset named in the config");
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;

    if (factor->parsed()) {
      recoil::cmd_decoherence_factor(cfg, std::cout);
    } else if (evolve->parsed()) {
      if (!emission.empty()) {
        cfg.emission = emission == "on"    ? recoil::EmissionSelect::on
                       : emission == "off" ? recoil::EmissionSelect::off
                                           : recoil::EmissionSelect::both;
      }
      if (evolve->count("--times") > 0) cfg.times = recoil::parse_time_list(times);
      recoil::cmd_evolve(cfg, std::cout);
    } else {
      recoil::cmd_oracle(cfg, recoil::parse_oracle_kind(which), std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return recoil::exit_code_for(e);
  }
  return 0;
}
