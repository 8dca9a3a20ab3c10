#pragma once

// Run configuration: a flat JSON object with namespaced keys whose names carry
// their units ("geometry.radius_m"). Presets fill in defaults; explicit keys win.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sagnac/errors.hpp"
#include "sagnac/propagation.hpp"
#include "sagnac/ring_modes.hpp"
#include "sagnac/sensitivity.hpp"
#include "sagnac/units.hpp"

namespace sagnac {

/// Raised for malformed or unknown configuration keys; message names the key path.
class ConfigError : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

struct SweepConfig {
  double rabi_p0_min = 0.0;  // rad/s; 0 means "s = 1e-3"
  double rabi_p0_max = 0.0;  // rad/s; 0 means "s = 1e2"
  int n_steps = 61;
};

struct CaseConfig {
  std::string name;         // empty: use the explicit geometry
  std::string species = "na23";
  double loss_parameter_a = 2.9;
  AreaConvention area = AreaConvention::RingLength;
};

struct RunConfig {
  std::string atom_preset = "rb87";
  std::string geometry_preset;  // empty, "gupta" or "arnold"
  AtomSpecies atom;
  ProbeControlFields fields;
  RingGeometry geometry;
  MediumPreparation preparation;
  int grid_points = 257;
  double detection_time = 1.0;  // s
  double norm = 1.0;            // trace of the density matrix
  SweepConfig sweep;
  std::vector<double> a_values = {0.05, 0.5, 5.0, 50.0, 500.0, 5000.0};
  CaseConfig case_study;
  SaturationProfile saturation = SaturationProfile::SelfConsistent;

  void validate() const;
  PropagationGrid grid() const;
};

/// Every key the loader accepts, in documentation order.
const std::vector<std::string>& config_keys();

RunConfig default_config();
RunConfig load_config(const nlohmann::json& j);
RunConfig load_config_file(const std::filesystem::path& path);

/// Flat echo of the fully resolved configuration. load_config(echo) reproduces it exactly.
nlohmann::json to_json(const RunConfig& cfg);

std::string_view to_string(SaturationProfile p);

}  // namespace sagnac
