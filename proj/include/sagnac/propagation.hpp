#pragma once

// Probe propagation around the ring in both directions and the differential
// Sagnac signal phase. The counter-clockwise pass is the clockwise one with
// Omega -> -Omega.

#include <span>
#include <string>
#include <vector>

#include "sagnac/polariton.hpp"
#include "sagnac/ring_modes.hpp"
#include "sagnac/units.hpp"

namespace sagnac {

/// Uniform EIT medium filling [0, length] of the ring.
struct Medium {
  double k_p = 0.0;
  double v_rec = 0.0;
  double eta = 1.0;
  double rabi_c = 0.0;
  double collective_sq = 0.0;  // 0 means no medium (xi = inf)
  double gamma13 = 0.0;
  double radius = 0.0;
  double length = 0.0;

  static Medium from_inputs(const AtomSpecies& atom, const ProbeControlFields& fields,
                            const RingGeometry& geometry);

  /// Copy with the density rescaled so that xi takes the given value (inf allowed).
  Medium with_xi(double xi) const;

  double tan2() const;
  XiValue xi() const;
  /// a = gamma13 L / v_rec
  double loss_parameter() const;
  /// c / v_rec = m c^2 / (hbar omega_p)
  double rest_energy_ratio() const;

  void validate() const;
};

struct PropagationGrid {
  int n_points = 257;
  double length = 0.0;

  /// Throws InvalidParameter for n_points < 64 or length <= 0.
  static PropagationGrid make(int n_points, double length);

  double dx() const { return length / (n_points - 1); }
  double x(int i) const { return i * dx(); }
  std::vector<double> points() const;
};

enum class Direction { Clockwise = 1, CounterClockwise = -1 };

struct DirectionResult {
  double phase = 0.0;          // Im ln Omega_p at x = L
  double log_amplitude = 0.0;  // Re ln(Omega_p / Omega_p(0)) at x = L
  std::vector<double> phase_profile;
  std::vector<double> log_amplitude_profile;
  int substeps = 1;             // RK4 steps per grid interval actually used
  double richardson_error = 0.0;
};

struct PropagationResult {
  double phase_cw = 0.0;
  double phase_ccw = 0.0;
  double amplitude_ratio = 1.0;  // |Omega_p(L)| / |Omega_p(0)|
  double delta_phi_sig = 0.0;    // phase_cw - phase_ccw
  double light_part = 0.0;       // single-pass light contribution
  double matter_part = 0.0;      // single-pass matter contribution
  std::vector<double> x;
  std::vector<double> s_profile;
  std::vector<double> xi_profile;
  std::vector<double> amplitude_profile;  // |Omega_p(x)| / |Omega_p(0)|
  std::vector<double> phase_cw_profile;
  std::vector<double> phase_ccw_profile;
  double richardson_error = 0.0;
  std::vector<std::string> warnings;
};

/// Weak-probe propagation: the phase rate is
///   (2 pi Omega R / lambda c) [xi/(xi+eta) + gate (m c^2/hbar omega) eta/(xi+eta)]
/// and the amplitude decays with gamma13 tan^2(theta) / c. Trapped and thermal media keep
/// only the light term. Warns if s(0) > 0.01.
PropagationResult propagate_weak(double rotation_rate, const Medium& medium,
                                 const MediumPreparation& prep, const PropagationGrid& grid,
                                 double rabi_p0);

/// All-order propagation of d/dx ln Omega_p = -gamma13 tan^2(theta)/c + i k_p chi'(|Omega_p|)
/// with classical RK4. Substeps per grid interval start at the smallest power of two keeping
/// the change of ln Omega_p below 0.1 per step, then one extra doubling gives the Richardson
/// estimate. Throws IntegrationError if no admissible step exists.
PropagationResult propagate_allorder(double rotation_rate, const Medium& medium,
                                     const MediumPreparation& prep, double rabi_p0,
                                     const PropagationGrid& grid);

DirectionResult propagate_direction(Direction direction, double rotation_rate,
                                    const Medium& medium, const MediumPreparation& prep,
                                    double rabi_p0, const PropagationGrid& grid);

enum class SaturationProfile { SelfConsistent, Frozen };

struct SignalPhase {
  double delta_phi_sig = 0.0;  // light_part + matter_part
  double light_part = 0.0;
  double matter_part = 0.0;
  std::vector<double> s_profile;
  std::vector<std::string> warnings;
};

/// Saturated signal phase
///   (2 pi Omega R / lambda c) int xi/(xi + (1+s)^-3) + (Omega R m / hbar) int (1+s)^-2/(xi + (1+s)^-3)
/// with s(x) from the all-order amplitude profile, or frozen at s(0).
SignalPhase signal_phase(double rotation_rate, const Medium& medium,
                         const MediumPreparation& prep, double rabi_p0,
                         const PropagationGrid& grid,
                         SaturationProfile mode = SaturationProfile::SelfConsistent);

/// Warns when tan^2(theta) > c / v_rec, where the neglected d^2/dx^2 term matters.
std::vector<std::string> dispersion_regime_check(const PolaritonState& state);

/// Composite Simpson rule on a uniform grid (3/8 rule on the last panel for odd interval counts).
double simpson(std::span<const double> f, double dx);

}  // namespace sagnac
