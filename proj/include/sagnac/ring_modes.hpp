#pragma once

// Azimuthal modes of atoms in state |1> on a ring of radius R, seen from the
// co-rotating frame, and the preparation-dependent fate of the matter-wave
// Sagnac term.

#include <string>
#include <string_view>
#include <vector>

namespace sagnac {

enum class PreparationKind { SuperfluidRing, ThermalRing, LongitudinalTrap };

struct MediumPreparation {
  PreparationKind kind = PreparationKind::SuperfluidRing;
  double temperature = 0.0;  // K, only meaningful for ThermalRing

  static MediumPreparation superfluid_ring() { return {PreparationKind::SuperfluidRing, 0.0}; }
  static MediumPreparation thermal_ring(double temperature) {
    return {PreparationKind::ThermalRing, temperature};
  }
  static MediumPreparation longitudinal_trap() { return {PreparationKind::LongitudinalTrap, 0.0}; }

  void validate() const;
};

std::string_view to_string(PreparationKind kind);
PreparationKind parse_preparation_kind(std::string_view name);

/// epsilon_n = n hbar Omega + n^2 hbar^2 / (2 m R^2); the centrifugal shift is dropped.
double mode_energy(long n, double rotation_rate, double radius, double mass);

/// Continuous minimiser of mode_energy: -m Omega R^2 / hbar.
double n_min(double rotation_rate, double radius, double mass);

/// Integer winding number of the lowest mode. Exact half-integer ties go toward 0.
long ground_mode(double rotation_rate, double radius, double mass);

struct ThermalPhase {
  double phase = 0.0;          // rad, closed form 2 pi Omega R^2 m / hbar
  double mean_winding = 0.0;   // Boltzmann <n> over the truncated ladder
  long terms = 0;              // ladder length actually summed
  std::vector<std::string> warnings;
};

/// Average rotational phase picked up around the ring by a thermal gas.
/// Warns unless k_B T exceeds hbar|Omega| + hbar^2/(2 m R^2) by at least 10x.
ThermalPhase thermal_phase(double rotation_rate, double radius, double mass, double temperature);

/// Boltzmann average of n, summed outward from the parabola minimum and truncated once
/// new terms fall below 1e-15 of the running sum.
double boltzmann_mean_winding(double rotation_rate, double radius, double mass,
                              double temperature, long* terms_used = nullptr);

/// 1 if the matter-wave contribution to the polarisation survives, else 0.
int matter_term_gate(const MediumPreparation& prep);

}  // namespace sagnac
