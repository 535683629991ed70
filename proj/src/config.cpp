#include "recoil/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <initializer_list>

#include "recoil/errors.hpp"

namespace recoil {

using nlohmann::json;

namespace {

void require_keys(const json& obj, std::string_view where,
                  std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

double number(const json& v, std::string_view name) {
  if (!v.is_number()) throw ConfigError(std::string(name) + " must be a number");
  return v.get<double>();
}

std::size_t count(const json& v, std::string_view name) {
  if (!v.is_number_unsigned()) throw ConfigError(std::string(name) + " must be a non-negative integer");
  return v.get<std::size_t>();
}

bool flag(const json& v, std::string_view name) {
  if (!v.is_boolean()) throw ConfigError(std::string(name) + " must be true or false");
  return v.get<bool>();
}

std::vector<double> numbers(const json& v, std::string_view name) {
  if (!v.is_array()) throw ConfigError(std::string(name) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(number(e, name));
  return out;
}

template <class T>
void set_if(const json& obj, const char* key, T& target, T (*conv)(const json&, std::string_view)) {
  if (obj.contains(key)) target = conv(obj.at(key), key);
}

EmissionSelect parse_emission(std::string_view s) {
  if (s == "on") return EmissionSelect::on;
  if (s == "off") return EmissionSelect::off;
  if (s == "both") return EmissionSelect::both;
  throw ConfigError("emission must be on, off or both");
}

std::string_view emission_name(EmissionSelect e) {
  switch (e) {
    case EmissionSelect::on: return "on";
    case EmissionSelect::off: return "off";
    case EmissionSelect::both: return "both";
  }
  return "both";
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig2", "fig3", "fig4", "oracle"}; }

RunConfig RunConfig::preset_named(std::string_view name) {
  RunConfig c;
  c.preset = std::string(name);
  c.params.omega0 = 1.0;
  c.params.gamma = 0.01;
  c.params.mu = 2000.0;
  if (name == "fig2" || name == "fig3") {
    c.scenario = {Scenario::Kind::superposition, 2.0, 0.25};
    c.grid = {12.0, 0.05};
    c.times = {100.0, 200.0, 1000.0};
  } else if (name == "fig4") {
    c.params.mu = 10.0;
    c.scenario = {Scenario::Kind::single, 0.0, 0.5};
    c.grid = {6.0, 0.05};
    c.times = {2.0, 3.0, 5.0};
  } else if (name == "oracle") {
    c.params.gamma = 1e-4;
    c.params.mu = 1e5;
    c.scenario = {Scenario::Kind::superposition, 2.0, 0.25};
    c.grid = {6.0, 0.05};
    c.times = {};
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  return c;
}

Scenario RunConfig::make_scenario(const ModelParams& p) const {
  if (!(scenario.d > 0.0)) throw ConfigError("scenario.d must be positive");
  const double a = scenario.a * p.lambda;
  const double d = scenario.d * p.lambda;
  return scenario.kind == Scenario::Kind::superposition ? Scenario::superposition(a, d)
                                                        : Scenario::single(a, d);
}

SpatialGrid RunConfig::spatial_grid(const ModelParams& p) const {
  return SpatialGrid::symmetric(grid.half_extent * p.lambda, grid.spacing * p.lambda);
}

ModeGrid RunConfig::mode_grid(const ModelParams& p) const {
  return ModeGrid::uniform(p, modes.n_k, modes.bandwidth * p.gamma, modes.phi);
}

RunConfig parse_config(const json& doc, std::string_view default_preset) {
  require_keys(doc, "config",
               {"preset", "params", "scenario", "grid", "times", "emission", "modes", "oracle",
                "factor", "output"});
  std::string preset(default_preset);
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw ConfigError("preset must be a string");
    preset = doc["preset"].get<std::string>();
  }
  RunConfig c = RunConfig::preset_named(preset);

  if (doc.contains("params")) {
    const json& p = doc["params"];
    require_keys(p, "params", {"omega0", "gamma", "dipole", "mu"});
    set_if(p, "omega0", c.params.omega0, number);
    set_if(p, "mu", c.params.mu, number);
    if (p.contains("dipole")) {
      c.params.dipole = number(p["dipole"], "dipole");
      c.params.gamma.reset();
    }
    if (p.contains("gamma")) {
      if (p["gamma"].is_null()) {
        c.params.gamma.reset();
      } else {
        c.params.gamma = number(p["gamma"], "gamma");
      }
    }
  }
  if (doc.contains("scenario")) {
    const json& s = doc["scenario"];
    require_keys(s, "scenario", {"kind", "a", "d"});
    if (s.contains("kind")) {
      const std::string k = s["kind"].is_string() ? s["kind"].get<std::string>() : "";
      if (k == "superposition") {
        c.scenario.kind = Scenario::Kind::superposition;
      } else if (k == "single") {
        c.scenario.kind = Scenario::Kind::single;
      } else {
        throw ConfigError("scenario.kind must be superposition or single");
      }
    }
    set_if(s, "a", c.scenario.a, number);
    set_if(s, "d", c.scenario.d, number);
  }
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    require_keys(g, "grid", {"half_extent", "spacing"});
    set_if(g, "half_extent", c.grid.half_extent, number);
    set_if(g, "spacing", c.grid.spacing, number);
  }
  if (doc.contains("times")) c.times = numbers(doc["times"], "times");
  if (doc.contains("emission")) {
    if (!doc["emission"].is_string()) throw ConfigError("emission must be a string");
    c.emission = parse_emission(doc["emission"].get<std::string>());
  }
  if (doc.contains("modes")) {
    const json& m = doc["modes"];
    require_keys(m, "modes", {"n_k", "bandwidth", "phi"});
    set_if(m, "n_k", c.modes.n_k, count);
    set_if(m, "bandwidth", c.modes.bandwidth, number);
    if (m.contains("phi")) c.modes.phi = numbers(m["phi"], "modes.phi");
  }
  if (doc.contains("oracle")) {
    const json& o = doc["oracle"];
    require_keys(o, "oracle",
                 {"t_end", "samples", "tol", "keep_cross_term", "p", "cap_p", "d_modes",
                  "l2_limit", "rate_limit", "n_phi", "quad_points", "quad_half_extent",
                  "quad_time", "offset_fraction", "factorization_limit", "offset_limit"});
    auto& s = c.oracle;
    set_if(o, "t_end", s.t_end, number);
    set_if(o, "samples", s.samples, count);
    set_if(o, "tol", s.tol, number);
    set_if(o, "keep_cross_term", s.keep_cross_term, flag);
    set_if(o, "p", s.momentum.relative, number);
    set_if(o, "cap_p", s.momentum.total, number);
    set_if(o, "d_modes", s.d_modes, count);
    set_if(o, "l2_limit", s.l2_limit, number);
    set_if(o, "rate_limit", s.rate_limit, number);
    set_if(o, "n_phi", s.n_phi, count);
    set_if(o, "quad_points", s.quad_points, count);
    set_if(o, "quad_half_extent", s.quad_half_extent, number);
    set_if(o, "quad_time", s.quad_time, number);
    set_if(o, "offset_fraction", s.offset_fraction, number);
    set_if(o, "factorization_limit", s.factorization_limit, number);
    set_if(o, "offset_limit", s.offset_limit, number);
  }
  if (doc.contains("factor")) {
    const json& f = doc["factor"];
    require_keys(f, "factor", {"max_dx_over_lambda", "points"});
    set_if(f, "max_dx_over_lambda", c.factor.max_dx_over_lambda, number);
    set_if(f, "points", c.factor.points, count);
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    require_keys(o, "output", {"dir"});
    if (o.contains("dir")) {
      if (!o["dir"].is_string()) throw ConfigError("output.dir must be a string");
      c.out_dir = o["dir"].get<std::string>();
    }
  }
  // Core invariants are checked here so a bad file fails before any run.
  (void)c.model();
  return c;
}

RunConfig load_config(const std::filesystem::path& path, std::string_view default_preset) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc, default_preset);
}

json to_json(const RunConfig& c) {
  json j;
  j["preset"] = c.preset;
  j["params"]["omega0"] = c.params.omega0;
  if (c.params.gamma) j["params"]["gamma"] = *c.params.gamma;
  if (c.params.dipole) j["params"]["dipole"] = *c.params.dipole;
  j["params"]["mu"] = c.params.mu;
  j["scenario"] = {{"kind", c.scenario.kind == Scenario::Kind::superposition ? "superposition"
                                                                              : "single"},
                   {"a", c.scenario.a},
                   {"d", c.scenario.d}};
  j["grid"] = {{"half_extent", c.grid.half_extent}, {"spacing", c.grid.spacing}};
  j["times"] = c.times;
  j["emission"] = emission_name(c.emission);
  j["modes"] = {{"n_k", c.modes.n_k}, {"bandwidth", c.modes.bandwidth}, {"phi", c.modes.phi}};
  j["factor"] = {{"max_dx_over_lambda", c.factor.max_dx_over_lambda},
                 {"points", c.factor.points}};
  return j;
}

std::vector<double> parse_time_list(std::string_view text) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc{} || res.ptr != item.data() + item.size()) {
      throw ConfigError("--times: cannot parse '" + std::string(item) + "'");
    }
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

}  // namespace recoil
