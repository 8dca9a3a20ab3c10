#pragma once

// Shot-noise-limited sensitivity: detector counts, SNR, the optimum operating
// point (s, xi) and the minimum detectable rotation rate.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sagnac/units.hpp"

namespace sagnac {

/// a = gamma13 L_M / v_rec
double loss_parameter(double gamma13, double length, double v_rec);

struct PhotonCount {
  double n_d = 0.0;
  std::vector<std::string> warnings;  // set when n_d < 1
};

/// n_D = F rho v_rec t xi s exp(-2a/xi)
PhotonCount detector_photons(double cross_section, double density, double v_rec, double time,
                             double xi, double s, double a);

/// Same count from the detected power, P_D t / (hbar omega_p), with the probe intensity
/// expressed through its Rabi frequency and dipole and attenuated by exp(-2a/xi).
double detector_photons_from_power(double cross_section, double dipole, double omega_p,
                                   double rabi_p0, double time, double xi, double a);

/// Interferometer and flux inputs entering the SNR prefactor.
struct FluxParams {
  double area = 0.0;           // m^2
  double cross_section = 0.0;  // m^2
  double density = 0.0;        // 1/m^3
  double v_rec = 0.0;          // m/s
  double time = 1.0;           // s
  double mass = 0.0;           // kg

  void validate() const;
  /// (hbar/m) / (A sqrt(F rho v_rec t)), the rotation rate at which SNR = 1 / shape.
  double rate_scale() const;
};

/// g(s, xi; a) = xi^1/2 s^1/2 (1+s) / (xi (1+s)^3 + 1) exp(-a/xi)
double snr_shape(double s, double xi, double a);

/// (Omega A / (hbar/m)) (F rho v_rec t)^1/2 g(s, xi; a), matter-wave term only.
double snr(double rotation_rate, const FluxParams& flux, double s, double xi, double a);

/// Large-a limit of max g: (4/(3 sqrt 3)) (27/128) sqrt(2) e^-1/2 / sqrt(a).
double asymptotic_g_max(double a);

struct Optimum {
  double a = 0.0;
  double s_opt = 0.0;
  double xi_opt = 0.0;
  double g_max = 0.0;
  double f_estimate = 0.0;  // 1 / (sqrt(a) g_max)
  int passes = 0;
};

/// Maximises g over s in [1e-4, 1e2], xi in [a/1e3, 1e3 a]: 64x64 log grid, then coordinate-wise
/// golden-section passes in log space until the point moves by less than 1e-8.
/// Throws BoundaryHit if the maximum lies on the edge of the box.
Optimum optimize_snr(double a);

std::vector<Optimum> optimum_table(std::span<const double> a_values);

/// f = 1 / (sqrt(a) g_max(a)) evaluated at a = 1e4.
double prefactor_f();

/// Rotation rate at which the optimised SNR equals 1 (uses the exact g_max(a)).
double omega_min(const FluxParams& flux, double a);

/// Closed-form estimate rate_scale * f * sqrt(a) with f from prefactor_f().
double omega_min_asymptotic(const FluxParams& flux, double a);

enum class AreaConvention { RingLength, Disk };  // A = R L_M = 2 pi R^2, or pi R^2

std::string_view to_string(AreaConvention c);
AreaConvention parse_area_convention(std::string_view name);

struct GeometryPreset {
  std::string name;
  RingGeometry geometry;
  std::string provenance;
};

/// "gupta" (3 mm diameter) or "arnold" (96 mm diameter) with rho = 1e20 m^-3, F = 1e-6 m^2.
GeometryPreset geometry_preset(std::string_view name);

struct Assumption {
  std::string key;
  std::string value;
  std::string unit;
  std::string provenance;
};

struct Comparison {
  std::string label;
  double reference = 0.0;  // rad s^-1 Hz^-1/2
  double ratio = 0.0;      // omega_min / reference
};

struct SensitivityReport {
  std::string case_name;
  std::string species;
  double a = 0.0;
  double time = 1.0;
  double area = 0.0;
  AreaConvention area_convention = AreaConvention::RingLength;
  double n_d = 0.0;
  double delta_phi_noise = 0.0;
  double snr = 0.0;  // at omega_min with (s_opt, xi_opt)
  double s_opt = 0.0;
  double xi_opt = 0.0;
  double g_max = 0.0;
  double f = 0.0;
  double omega_min = 0.0;
  double omega_min_asymptotic = 0.0;
  std::vector<Assumption> assumptions;
  std::vector<Comparison> comparisons;
  std::vector<std::string> warnings;
};

double interferometer_area(const RingGeometry& geometry, AreaConvention convention);

/// Full report for a named ring-trap geometry.
SensitivityReport case_study(std::string_view name, const SpeciesPreset& species, double a,
                             double time, AreaConvention convention = AreaConvention::RingLength);

/// Report for arbitrary inputs; a is taken from gamma13 L_M / v_rec.
SensitivityReport sensitivity_report(const AtomSpecies& atom, const ProbeControlFields& fields,
                                     const RingGeometry& geometry, double time,
                                     AreaConvention convention, std::string case_name,
                                     std::string species_name);

}  // namespace sagnac
