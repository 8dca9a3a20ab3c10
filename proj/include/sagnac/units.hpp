#pragma once

// Physical inputs of the gyroscope in SI units and the single-atom / single-photon
// scales derived from them. Dimensionless groups (s, xi, a, theta, eta) are never
// stored here; they are computed on demand by the modules that need them.

#include <string>
#include <string_view>

namespace sagnac {

/// Lambda-type atom. Level 2 is excited; it decays to 1 with gamma1 and to 3 with gamma3.
struct AtomSpecies {
  double mass = 0.0;      // kg
  double dipole_p = 0.0;  // C m, probe transition 1-2
  double gamma1 = 0.0;    // 1/s
  double gamma3 = 0.0;    // 1/s
  double gamma13 = 0.0;   // 1/s, ground-coherence dephasing

  /// Total decay rate of the excited level; always gamma1 + gamma3.
  double gamma2() const noexcept { return gamma1 + gamma3; }

  /// Throws InvalidParameter unless mass > 0 and all rates are non-negative.
  void validate() const;
};

struct ProbeControlFields {
  double lambda_p = 0.0;      // m
  double k_c_parallel = 0.0;  // 1/m, control wavevector projected on the ring
  double rabi_p0 = 0.0;       // rad/s, |Omega_p| at the source
  double rabi_c = 0.0;        // rad/s
  double delta2 = 0.0;        // rad/s, one-photon detuning incl. recoil shift
  double delta3 = 0.0;        // rad/s, two-photon detuning incl. recoil shift

  double k_p() const noexcept;
  double omega_p() const noexcept;

  void validate() const;
};

struct RingGeometry {
  double radius = 0.0;         // m
  double medium_length = 0.0;  // m, at most one circumference
  double cross_section = 0.0;  // m^2
  double atom_density = 0.0;   // 1/m^3
  double rotation_rate = 0.0;  // rad/s

  double circumference() const noexcept;

  /// Also rejects |Omega| R / c > 1e-3, outside the non-relativistic treatment.
  void validate() const;
};

struct RecoilScales {
  double v_rec = 0.0;      // m/s
  double omega_rec = 0.0;  // rad/s
  double eta = 0.0;        // momentum-transfer fraction (k_p - k_c_parallel) / k_p
};

/// Probe coupling. `g` is the single-atom coupling of the guided probe mode
/// (unit m^{1/2}/s); `collective_sq` is g^2 times the linear density rho*F, the
/// (rad/s)^2 quantity whose ratio to |Omega_c|^2 is tan^2(theta).
struct Coupling {
  double g = 0.0;
  double collective_sq = 0.0;
};

struct DerivedScales {
  RecoilScales recoil;
  Coupling coupling;
};

RecoilScales derive_recoil(const AtomSpecies& atom, const ProbeControlFields& fields);

Coupling coupling_constant(const AtomSpecies& atom, const ProbeControlFields& fields,
                           const RingGeometry& geometry);

DerivedScales derive_scales(const AtomSpecies& atom, const ProbeControlFields& fields,
                            const RingGeometry& geometry);

/// Einstein A coefficient of a dipole transition.
double gamma_from_dipole(double dipole, double omega);
/// Inverse of gamma_from_dipole.
double dipole_from_gamma(double gamma, double omega);

/// m c^2 / (hbar omega_p): how much larger the matter-wave Sagnac phase is per unit area.
double rest_energy_ratio(const AtomSpecies& atom, const ProbeControlFields& fields);

// Presets -------------------------------------------------------------------

struct SpeciesPreset {
  std::string name;
  AtomSpecies atom;
  double lambda_p = 0.0;  // D2 line
  std::string provenance;
};

/// 87Rb D2 line. gamma1 = gamma3 = natural linewidth, dipole from the A coefficient.
SpeciesPreset rubidium87();
/// 23Na D2 line, same conventions.
SpeciesPreset sodium23();

/// Looks up "rb87" or "na23"; throws InvalidParameter otherwise.
SpeciesPreset species_preset(std::string_view name);

}  // namespace sagnac
