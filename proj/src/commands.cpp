#include "sagnac/commands.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "sagnac/constants.hpp"
#include "sagnac/errors.hpp"
#include "sagnac/lambda_bloch.hpp"
#include "sagnac/polariton.hpp"

#ifndef SAGNAC_VERSION
#define SAGNAC_VERSION "unknown"
#endif

namespace sagnac {

using nlohmann::json;
using namespace constants;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
}

namespace {

json quantity(double value, const char* unit) { return {{"value", value}, {"unit", unit}}; }

json note(const std::string& key, const std::string& value, const std::string& provenance = "") {
  return {{"key", key}, {"value", value}, {"unit", ""}, {"provenance", provenance}};
}

json envelope(const char* command, const RunConfig& cfg) {
  json e;
  e["tool"] = "sagnac-gyro";
  e["version"] = SAGNAC_VERSION;
  e["command"] = command;
  e["inputs"] = to_json(cfg);
  e["results"] = json::object();
  e["assumptions"] = json::array();
  e["warnings"] = json::array();
  const SpeciesPreset sp = species_preset(cfg.atom_preset);
  e["assumptions"].push_back(note("atom.preset", sp.name, sp.provenance));
  return e;
}

void add_warnings(json& e, const std::vector<std::string>& w) {
  for (const auto& s : w) e["warnings"].push_back(s);
}

Medium medium_of(const RunConfig& cfg) {
  return Medium::from_inputs(cfg.atom, cfg.fields, cfg.geometry);
}

}  // namespace

CommandOutput cmd_steady_state(const RunConfig& cfg) {
  json e = envelope("steady-state", cfg);
  const BlochParams p = bloch_params(cfg.atom, cfg.fields, cfg.geometry);
  const BlochGenerator gen = build_generator(p);
  const DensityMatrix rho = steady_state(gen, cfg.norm);

  Table t;
  t.header = {"row", "re_1", "im_1", "re_2", "im_2", "re_3", "im_3"};
  json matrix = json::array();
  for (int mu = 1; mu <= 3; ++mu) {
    std::vector<double> row = {static_cast<double>(mu)};
    json jrow = json::array();
    for (int nu = 1; nu <= 3; ++nu) {
      row.push_back(rho(mu, nu).real());
      row.push_back(rho(mu, nu).imag());
      jrow.push_back({rho(mu, nu).real(), rho(mu, nu).imag()});
    }
    t.rows.push_back(row);
    matrix.push_back(jrow);
  }

  auto& r = e["results"];
  r["rho"] = {{"value", matrix}, {"unit", "same as steady_state.norm"}};
  r["hermiticity_residual"] = quantity(rho.hermiticity_residual(), "1");
  r["trace_residual"] = quantity(rho.trace_residual(), "1");
  r["min_population"] = quantity(rho.min_population(), "1");
  r["rho22_over_norm"] = quantity(rho(2, 2).real() / rho.norm(), "1");
  r["rho21_re"] = quantity(coherence_rho21(rho).real(), "same as steady_state.norm");
  r["rho21_im"] = quantity(coherence_rho21(rho).imag(), "same as steady_state.norm");
  r["nonlocal_neglect_ratio"] = quantity(nonlocal_neglect_ratio(p), "1");

  e["assumptions"].push_back(note("nonlocal_terms", "dropped"));
  e["assumptions"].push_back(note("rotation_drift", "Omega R d/dx terms dropped in the solve"));
  e["assumptions"].push_back(
      note("rho23_detuning", "+i(delta2-delta3) - gamma2/2", "interpreted"));
  if (nonlocal_neglect_ratio(p) > 0.01) {
    e["warnings"].push_back("k_p |Omega| R / (gamma2/2) > 0.01: non-local terms may matter");
  }
  return {e, t};
}

CommandOutput cmd_propagate(const RunConfig& cfg) {
  json e = envelope("propagate", cfg);
  const Medium m = medium_of(cfg);
  const PropagationGrid grid = cfg.grid();
  const PropagationResult all = propagate_allorder(cfg.geometry.rotation_rate, m,
                                                   cfg.preparation, cfg.fields.rabi_p0, grid);
  const PropagationResult weak = propagate_weak(cfg.geometry.rotation_rate, m, cfg.preparation,
                                                grid, cfg.fields.rabi_p0);

  auto& r = e["results"];
  r["phase_cw"] = quantity(all.phase_cw, "rad");
  r["phase_ccw"] = quantity(all.phase_ccw, "rad");
  r["delta_phi_sig"] = quantity(all.delta_phi_sig, "rad");
  r["light_part"] = quantity(all.light_part, "rad");
  r["matter_part"] = quantity(all.matter_part, "rad");
  r["amplitude_ratio"] = quantity(all.amplitude_ratio, "1");
  r["richardson_error"] = quantity(all.richardson_error, "rad");
  r["delta_phi_sig_weak"] = quantity(weak.delta_phi_sig, "rad");
  const XiValue xi = m.xi();
  r["xi"] = quantity(xi.infinite ? -1.0 : xi.value, "1 (-1 means no medium)");
  r["loss_parameter_a"] = quantity(m.loss_parameter(), "1");
  e["assumptions"].push_back(note("delta_phi_sig", "phase_cw - phase_ccw"));
  e["assumptions"].push_back(
      note("light_part, matter_part", "single-pass contributions, sum = delta_phi_sig / 2"));
  add_warnings(e, all.warnings);

  Table t;
  t.header = {"x_m", "amplitude", "phase_cw_rad", "phase_ccw_rad", "s", "xi"};
  for (std::size_t i = 0; i < all.x.size(); ++i) {
    t.rows.push_back({all.x[i], all.amplitude_profile[i], all.phase_cw_profile[i],
                      all.phase_ccw_profile[i], all.s_profile[i], all.xi_profile[i]});
  }
  return {e, t};
}

CommandOutput cmd_phase(const RunConfig& cfg) {
  json e = envelope("phase", cfg);
  const Medium m = medium_of(cfg);
  const PropagationGrid grid = cfg.grid();
  const double omega = cfg.geometry.rotation_rate;
  const PropagationResult all =
      propagate_allorder(omega, m, cfg.preparation, cfg.fields.rabi_p0, grid);
  const SignalPhase sig =
      signal_phase(omega, m, cfg.preparation, cfg.fields.rabi_p0, grid, cfg.saturation);

  auto& r = e["results"];
  r["delta_phi_sig"] = quantity(sig.delta_phi_sig, "rad");
  r["light_part"] = quantity(sig.light_part, "rad");
  r["matter_part"] = quantity(sig.matter_part, "rad");
  r["amplitude_ratio"] = quantity(all.amplitude_ratio, "1");
  r["phase_cw_minus_ccw"] = quantity(all.delta_phi_sig, "rad");
  const double vacuum = 4.0 * pi * omega * cfg.geometry.radius * cfg.geometry.medium_length /
                        (cfg.fields.lambda_p * speed_of_light);
  r["vacuum_sagnac_phase"] = quantity(vacuum, "rad");
  e["assumptions"].push_back(
      note("delta_phi_sig", "light_part + matter_part, saturated single-pass integrals"));
  e["assumptions"].push_back(note("vacuum_sagnac_phase", "4 pi Omega R L_M / (lambda c)",
                                  "compare with phase_cw_minus_ccw"));
  e["assumptions"].push_back(
      note("signal.saturation_profile", std::string(to_string(cfg.saturation))));
  add_warnings(e, sig.warnings);

  Table t;
  t.header = {"x_m", "s", "amplitude"};
  for (std::size_t i = 0; i < all.x.size(); ++i) {
    t.rows.push_back({all.x[i], sig.s_profile[i], all.amplitude_profile[i]});
  }
  return {e, t};
}

CommandOutput cmd_snr_sweep(const RunConfig& cfg) {
  json e = envelope("snr-sweep", cfg);
  const Medium m = medium_of(cfg);
  const XiValue xi = m.xi();
  if (xi.infinite) throw ConfigError("geometry.atom_density_per_m3: snr-sweep needs a medium");
  const PropagationGrid grid = cfg.grid();
  const double a = m.loss_parameter();
  const double rc = cfg.fields.rabi_c;
  const double lo = cfg.sweep.rabi_p0_min > 0.0 ? cfg.sweep.rabi_p0_min : rc * std::sqrt(1e-3);
  const double hi = cfg.sweep.rabi_p0_max > 0.0 ? cfg.sweep.rabi_p0_max : rc * std::sqrt(1e2);
  if (!(hi >= lo)) throw ConfigError("sweep: rabi_p0_max must be >= rabi_p0_min");
  const int n = cfg.sweep.n_steps;

  Table t;
  t.header = {"rabi_p0", "s", "snr_total", "snr_matter", "snr_light"};
  std::vector<std::string> warnings;
  for (int i = 0; i < n; ++i) {
    const double rabi = n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    const double s = rabi * rabi / (rc * rc);
    const SignalPhase sig =
        signal_phase(cfg.geometry.rotation_rate, m, cfg.preparation, rabi, grid, cfg.saturation);
    const PhotonCount count = detector_photons(cfg.geometry.cross_section,
                                               cfg.geometry.atom_density, m.v_rec,
                                               cfg.detection_time, xi.value, s, a);
    const double root = std::sqrt(count.n_d);
    t.rows.push_back({rabi, s, sig.delta_phi_sig * root, sig.matter_part * root,
                      sig.light_part * root});
    if (i == 0) warnings = sig.warnings;
  }

  auto& r = e["results"];
  r["xi"] = quantity(xi.value, "1");
  r["loss_parameter_a"] = quantity(a, "1");
  r["rows"] = quantity(static_cast<double>(t.rows.size()), "1");
  e["assumptions"].push_back(note("snr", "signal phase times sqrt(n_D), shot noise only"));
  e["assumptions"].push_back(
      note("signal.saturation_profile", std::string(to_string(cfg.saturation))));
  add_warnings(e, warnings);
  return {e, t};
}

CommandOutput cmd_optimize(const RunConfig& cfg) {
  json e = envelope("optimize", cfg);
  Table t;
  t.header = {"a", "s_opt", "xi_opt", "g_max", "f_estimate"};
  json rows = json::array();
  for (const Optimum& o : optimum_table(cfg.a_values)) {
    t.rows.push_back({o.a, o.s_opt, o.xi_opt, o.g_max, o.f_estimate});
    rows.push_back({{"a", o.a}, {"s_opt", o.s_opt}, {"xi_opt", o.xi_opt}, {"g_max", o.g_max},
                    {"f_estimate", o.f_estimate}});
  }
  e["results"]["optima"] = {{"value", rows}, {"unit", "1"}};
  e["results"]["f"] = quantity(prefactor_f(), "1");
  e["assumptions"].push_back(note("objective", "matter-wave SNR shape factor g(s, xi; a)"));
  e["assumptions"].push_back(note("f", "1 / (sqrt(a) g_max(a)) at a = 1e4"));
  return {e, t};
}

CommandOutput cmd_omega_min(const RunConfig& cfg) {
  json e = envelope("omega-min", cfg);
  SensitivityReport rep;
  auto& r = e["results"];
  if (!cfg.case_study.name.empty()) {
    const SpeciesPreset sp = species_preset(cfg.case_study.species);
    const double a = cfg.case_study.loss_parameter_a;
    rep = case_study(cfg.case_study.name, sp, a, cfg.detection_time, cfg.case_study.area);
    const SensitivityReport gupta = case_study("gupta", sp, a, cfg.detection_time,
                                               cfg.case_study.area);
    const SensitivityReport arnold = case_study("arnold", sp, a, cfg.detection_time,
                                                cfg.case_study.area);
    r["gupta_over_arnold"] = quantity(gupta.omega_min / arnold.omega_min, "1");
  } else {
    rep = sensitivity_report(cfg.atom, cfg.fields, cfg.geometry, cfg.detection_time,
                             cfg.case_study.area, "config", cfg.atom_preset);
  }
  r["omega_min"] = quantity(rep.omega_min, "rad s^-1 Hz^-1/2");
  r["omega_min_asymptotic"] = quantity(rep.omega_min_asymptotic, "rad s^-1 Hz^-1/2");
  r["loss_parameter_a"] = quantity(rep.a, "1");
  r["s_opt"] = quantity(rep.s_opt, "1");
  r["xi_opt"] = quantity(rep.xi_opt, "1");
  r["g_max"] = quantity(rep.g_max, "1");
  r["f"] = quantity(rep.f, "1");
  r["n_d"] = quantity(rep.n_d, "1");
  r["delta_phi_noise"] = quantity(rep.delta_phi_noise, "rad");
  r["snr_at_omega_min"] = quantity(rep.snr, "1");
  r["area"] = quantity(rep.area, "m^2");
  json comps = json::array();
  for (const auto& c : rep.comparisons) {
    comps.push_back({{"label", c.label},
                     {"reference", quantity(c.reference, "rad s^-1 Hz^-1/2")},
                     {"omega_min_over_reference", c.ratio}});
  }
  r["comparisons"] = comps;
  for (const auto& a : rep.assumptions) {
    e["assumptions"].push_back(
        {{"key", a.key}, {"value", a.value}, {"unit", a.unit}, {"provenance", a.provenance}});
  }
  add_warnings(e, rep.warnings);
  return {e, std::nullopt};
}

}  // namespace sagnac
