#pragma once

// Run configuration. Lengths are given in units of lambda, times in units
// of 1/gamma and mode bandwidths in units of gamma.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "recoil/core.hpp"
#include "recoil/density.hpp"

namespace recoil {

struct ScenarioSpec {
  Scenario::Kind kind = Scenario::Kind::superposition;
  double a = 2.0;
  double d = 0.25;
};

struct GridSpec {
  double half_extent = 12.0;
  double spacing = 0.05;
};

struct ModeSpec {
  std::size_t n_k = 400;
  double bandwidth = 50.0;
  std::vector<double> phi{0.0};
};

struct FactorSpec {
  double max_dx_over_lambda = 3.0;
  std::size_t points = 600;
};

struct OracleSpec {
  double t_end = 5.0;
  std::size_t samples = 51;
  double tol = 1e-10;
  bool keep_cross_term = true;
  Momentum momentum;
  std::size_t d_modes = 8;
  double l2_limit = 0.05;
  double rate_limit = 0.05;
  std::size_t n_phi = 256;
  std::size_t quad_points = 16;
  double quad_half_extent = 2.0;
  double quad_time = 0.0;
  double offset_fraction = 0.01;
  double factorization_limit = 1e-8;
  double offset_limit = 0.02;
};

enum class EmissionSelect { off, on, both };

struct RunConfig {
  std::string preset;
  ParamInputs params;
  ScenarioSpec scenario;
  GridSpec grid;
  std::vector<double> times;
  EmissionSelect emission = EmissionSelect::both;
  ModeSpec modes;
  OracleSpec oracle;
  FactorSpec factor;
  std::filesystem::path out_dir = ".";

  /// Named defaults: fig2, fig3, fig4, oracle. Throws ConfigError.
  static RunConfig preset_named(std::string_view name);

  ModelParams model() const { return make_params(params); }
  Scenario make_scenario(const ModelParams& p) const;
  SpatialGrid spatial_grid(const ModelParams& p) const;
  ModeGrid mode_grid(const ModelParams& p) const;
};

std::vector<std::string> preset_names();

/// Starts from `preset` (or the document's "preset" key) and applies the
/// document on top. Unknown keys and ill-typed values throw ConfigError.
RunConfig parse_config(const nlohmann::json& doc, std::string_view default_preset);
RunConfig load_config(const std::filesystem::path& path, std::string_view default_preset);

/// Echo of the effective configuration, used in output metadata.
nlohmann::json to_json(const RunConfig& cfg);

/// "0.5,2,3" -> {0.5, 2, 3}; empty text gives an empty list.
std::vector<double> parse_time_list(std::string_view text);

}  // namespace recoil
