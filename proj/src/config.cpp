#include "sagnac/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "sagnac/constants.hpp"

namespace sagnac {

using nlohmann::json;

namespace {

double get_number(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(key + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(key + ": not finite");
  return d;
}

int get_int(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(key + ": expected an integer");
  return v.get<int>();
}

std::string get_string(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(key + ": expected a string");
  return v.get<std::string>();
}

template <class F>
void with_key(const json& j, const std::string& key, F&& apply) {
  if (!j.contains(key)) return;
  try {
    apply();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

void set_number(const json& j, const std::string& key, double& target) {
  with_key(j, key, [&] { target = get_number(j, key); });
}

SaturationProfile parse_saturation(const std::string& s) {
  if (s == "self_consistent") return SaturationProfile::SelfConsistent;
  if (s == "frozen") return SaturationProfile::Frozen;
  throw ConfigError("signal.saturation_profile: expected self_consistent or frozen, got '" + s +
                    "'");
}

}  // namespace

std::string_view to_string(SaturationProfile p) {
  return p == SaturationProfile::SelfConsistent ? "self_consistent" : "frozen";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "atom.preset",
      "atom.mass_kg",
      "atom.dipole_cm",
      "atom.gamma1_per_s",
      "atom.gamma3_per_s",
      "atom.gamma13_per_s",
      "fields.lambda_p_m",
      "fields.k_c_parallel_per_m",
      "fields.rabi_p0_rad_s",
      "fields.rabi_c_rad_s",
      "fields.delta2_rad_s",
      "fields.delta3_rad_s",
      "geometry.preset",
      "geometry.radius_m",
      "geometry.medium_length_m",
      "geometry.cross_section_m2",
      "geometry.atom_density_per_m3",
      "geometry.rotation_rate_rad_s",
      "preparation.kind",
      "preparation.temperature_k",
      "grid.n_points",
      "detection.time_s",
      "steady_state.norm",
      "sweep.rabi_p0_min_rad_s",
      "sweep.rabi_p0_max_rad_s",
      "sweep.n_steps",
      "optimize.a_values",
      "case.name",
      "case.species",
      "case.loss_parameter_a",
      "case.area_convention",
      "signal.saturation_profile",
  };
  return keys;
}

void RunConfig::validate() const {
  auto wrap = [](const char* prefix, auto&& fn) {
    try {
      fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidParameter& e) {
      throw ConfigError(std::string(prefix) + ": " + e.what());
    }
  };
  wrap("atom", [&] { atom.validate(); });
  wrap("fields", [&] { fields.validate(); });
  wrap("geometry", [&] { geometry.validate(); });
  wrap("preparation", [&] { preparation.validate(); });
  if (grid_points < 64) throw ConfigError("grid.n_points: must be >= 64");
  if (!(detection_time > 0.0)) throw ConfigError("detection.time_s: must be positive");
  if (!(norm > 0.0)) throw ConfigError("steady_state.norm: must be positive");
  if (sweep.n_steps < 1) throw ConfigError("sweep.n_steps: must be >= 1");
  if (sweep.rabi_p0_min < 0.0 || sweep.rabi_p0_max < 0.0) {
    throw ConfigError("sweep: rabi_p0 range must be non-negative");
  }
  for (double a : a_values) {
    if (!(a > 0.0)) throw ConfigError("optimize.a_values: entries must be positive");
  }
  if (!(case_study.loss_parameter_a > 0.0)) {
    throw ConfigError("case.loss_parameter_a: must be positive");
  }
}

PropagationGrid RunConfig::grid() const {
  return PropagationGrid::make(grid_points, geometry.medium_length);
}

RunConfig default_config() { return load_config(json::object()); }

RunConfig load_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  const auto& known = config_keys();
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(key + ": unknown configuration key");
  }

  RunConfig cfg;

  with_key(j, "atom.preset", [&] { cfg.atom_preset = get_string(j, "atom.preset"); });
  SpeciesPreset species;
  try {
    species = species_preset(cfg.atom_preset);
  } catch (const InvalidParameter& e) {
    throw ConfigError(std::string("atom.preset: ") + e.what());
  }
  cfg.atom = species.atom;
  cfg.fields.lambda_p = species.lambda_p;
  set_number(j, "atom.mass_kg", cfg.atom.mass);
  set_number(j, "atom.dipole_cm", cfg.atom.dipole_p);
  set_number(j, "atom.gamma1_per_s", cfg.atom.gamma1);
  set_number(j, "atom.gamma3_per_s", cfg.atom.gamma3);
  set_number(j, "atom.gamma13_per_s", cfg.atom.gamma13);

  cfg.fields.rabi_c = 2e6;
  set_number(j, "fields.lambda_p_m", cfg.fields.lambda_p);
  set_number(j, "fields.k_c_parallel_per_m", cfg.fields.k_c_parallel);
  set_number(j, "fields.rabi_c_rad_s", cfg.fields.rabi_c);
  cfg.fields.rabi_p0 = cfg.fields.rabi_c / std::sqrt(3.0);
  set_number(j, "fields.rabi_p0_rad_s", cfg.fields.rabi_p0);
  set_number(j, "fields.delta2_rad_s", cfg.fields.delta2);
  set_number(j, "fields.delta3_rad_s", cfg.fields.delta3);

  cfg.geometry.radius = 1.5e-3;
  cfg.geometry.cross_section = 1e-6;
  cfg.geometry.atom_density = 1e20;
  cfg.geometry.rotation_rate = 7.29e-5;
  with_key(j, "geometry.preset", [&] {
    cfg.geometry_preset = get_string(j, "geometry.preset");
    const GeometryPreset g = geometry_preset(cfg.geometry_preset);
    const double rotation = cfg.geometry.rotation_rate;
    cfg.geometry = g.geometry;
    cfg.geometry.rotation_rate = rotation;
  });
  set_number(j, "geometry.radius_m", cfg.geometry.radius);
  cfg.geometry.medium_length = constants::two_pi * cfg.geometry.radius;
  set_number(j, "geometry.medium_length_m", cfg.geometry.medium_length);
  set_number(j, "geometry.cross_section_m2", cfg.geometry.cross_section);
  set_number(j, "geometry.atom_density_per_m3", cfg.geometry.atom_density);
  set_number(j, "geometry.rotation_rate_rad_s", cfg.geometry.rotation_rate);

  with_key(j, "preparation.kind", [&] {
    cfg.preparation.kind = parse_preparation_kind(get_string(j, "preparation.kind"));
  });
  set_number(j, "preparation.temperature_k", cfg.preparation.temperature);

  with_key(j, "grid.n_points", [&] { cfg.grid_points = get_int(j, "grid.n_points"); });
  set_number(j, "detection.time_s", cfg.detection_time);
  set_number(j, "steady_state.norm", cfg.norm);

  set_number(j, "sweep.rabi_p0_min_rad_s", cfg.sweep.rabi_p0_min);
  set_number(j, "sweep.rabi_p0_max_rad_s", cfg.sweep.rabi_p0_max);
  with_key(j, "sweep.n_steps", [&] { cfg.sweep.n_steps = get_int(j, "sweep.n_steps"); });

  with_key(j, "optimize.a_values", [&] {
    const json& v = j.at("optimize.a_values");
    if (!v.is_array()) throw ConfigError("optimize.a_values: expected an array of numbers");
    cfg.a_values.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        throw ConfigError("optimize.a_values[" + std::to_string(i) + "]: expected a number");
      }
      cfg.a_values.push_back(v[i].get<double>());
    }
  });

  with_key(j, "case.name", [&] {
    cfg.case_study.name = get_string(j, "case.name");
    geometry_preset(cfg.case_study.name);
  });
  with_key(j, "case.species", [&] {
    cfg.case_study.species = get_string(j, "case.species");
    species_preset(cfg.case_study.species);
  });
  set_number(j, "case.loss_parameter_a", cfg.case_study.loss_parameter_a);
  with_key(j, "case.area_convention", [&] {
    cfg.case_study.area = parse_area_convention(get_string(j, "case.area_convention"));
  });
  with_key(j, "signal.saturation_profile", [&] {
    cfg.saturation = parse_saturation(get_string(j, "signal.saturation_profile"));
  });

  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + path.string() + ": " + e.what());
  }
  return load_config(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["atom.preset"] = c.atom_preset;
  j["atom.mass_kg"] = c.atom.mass;
  j["atom.dipole_cm"] = c.atom.dipole_p;
  j["atom.gamma1_per_s"] = c.atom.gamma1;
  j["atom.gamma3_per_s"] = c.atom.gamma3;
  j["atom.gamma13_per_s"] = c.atom.gamma13;
  j["fields.lambda_p_m"] = c.fields.lambda_p;
  j["fields.k_c_parallel_per_m"] = c.fields.k_c_parallel;
  j["fields.rabi_p0_rad_s"] = c.fields.rabi_p0;
  j["fields.rabi_c_rad_s"] = c.fields.rabi_c;
  j["fields.delta2_rad_s"] = c.fields.delta2;
  j["fields.delta3_rad_s"] = c.fields.delta3;
  if (!c.geometry_preset.empty()) j["geometry.preset"] = c.geometry_preset;
  j["geometry.radius_m"] = c.geometry.radius;
  j["geometry.medium_length_m"] = c.geometry.medium_length;
  j["geometry.cross_section_m2"] = c.geometry.cross_section;
  j["geometry.atom_density_per_m3"] = c.geometry.atom_density;
  j["geometry.rotation_rate_rad_s"] = c.geometry.rotation_rate;
  j["preparation.kind"] = std::string(to_string(c.preparation.kind));
  j["preparation.temperature_k"] = c.preparation.temperature;
  j["grid.n_points"] = c.grid_points;
  j["detection.time_s"] = c.detection_time;
  j["steady_state.norm"] = c.norm;
  j["sweep.rabi_p0_min_rad_s"] = c.sweep.rabi_p0_min;
  j["sweep.rabi_p0_max_rad_s"] = c.sweep.rabi_p0_max;
  j["sweep.n_steps"] = c.sweep.n_steps;
  j["optimize.a_values"] = c.a_values;
  if (!c.case_study.name.empty()) j["case.name"] = c.case_study.name;
  j["case.species"] = c.case_study.species;
  j["case.loss_parameter_a"] = c.case_study.loss_parameter_a;
  j["case.area_convention"] = std::string(to_string(c.case_study.area));
  j["signal.saturation_profile"] = std::string(to_string(c.saturation));
  return j;
}

}  // namespace sagnac
