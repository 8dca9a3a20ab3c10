#pragma once

// Dressed-medium quantities: mixing angle, polariton group velocity, xi, the
// saturating susceptibility and the absorption coefficient.

#include <string>
#include <vector>

namespace sagnac {

/// tan^2(theta) = collective_sq / rabi_c^2.
double tan2_theta(double collective_sq, double rabi_c);

/// theta in [0, pi/2).
double mixing_angle(double collective_sq, double rabi_c);

/// tan^2(theta) / (c / v_rec); equals 1 at the critical angle.
double theta_crit_ratio(double tan2, double v_rec);

/// v_gr = c cos^2(theta) + eta v_rec sin^2(theta).
double group_velocity(double theta, double eta, double v_rec);

struct XiValue {
  double value = 0.0;
  bool infinite = false;  // theta = 0: no medium, value is +inf
};

/// cot^2(theta) / cot^2(theta_crit) = (c / v_rec) cot^2(theta).
XiValue xi(double theta, double v_rec);

/// xi straight from the medium: (c / v_rec) rabi_c^2 / collective_sq.
XiValue xi_from_medium(double collective_sq, double rabi_c, double v_rec);

/// v_gr / v_rec - eta. Differs from xi() by exactly the fraction v_gr / c.
double xi_approx(double v_gr, double v_rec, double eta);

/// collective_sq that realises a given xi.
double collective_sq_for_xi(double xi, double rabi_c, double v_rec);

struct SusceptibilityInput {
  double rabi_p = 0.0;         // rad/s, local |Omega_p|
  double rabi_c = 0.0;         // rad/s
  double collective_sq = 0.0;  // (rad/s)^2
  double gamma13 = 0.0;
  double rotation_rate = 0.0;
  double radius = 0.0;
  double k_p = 0.0;
  double v_rec = 0.0;
  double eta = 1.0;
  int matter_gate = 1;  // from matter_term_gate()
  // Only used for the EIT-condition check.
  double gamma1 = 0.0;
  double delta2 = 0.0;
  double delta3 = 0.0;
};

struct Susceptibility {
  double chi_real = 0.0;
  double chi_imag = 0.0;  // stored >= 0, field intensity decays as exp(-2 k_p chi'' x)
  double beta = 1.0;
  std::vector<std::string> warnings;
};

/// All-order susceptibility at line centre, saturating in s = |Omega_p|^2 / |Omega_c|^2:
///   chi'  = (Omega R / c)(1 + gate eta T / (1+s)^2) / beta
///   chi'' = (gamma13 / (k_p c)) T / (1+s)^2 / beta
///   beta  = 1 + eta (v_rec / c) T / (1+s)^3,   T = tan^2(theta).
/// Warns (does not throw) when the EIT assumptions do not hold.
Susceptibility susceptibility(const SusceptibilityInput& in);

struct Absorption {
  double bound = 0.0;  // gamma13 / (v_rec xi), the working value used for propagation
  double exact = 0.0;  // k_p chi''
};

Absorption absorption_coefficient(const Susceptibility& chi, double k_p, double gamma13,
                                  double v_rec, double xi);

struct PolaritonState {
  double tan2_theta = 0.0;
  double theta = 0.0;
  double v_gr = 0.0;
  double xi = 0.0;
  bool xi_infinite = false;
  double s = 0.0;
  double kappa = 0.0;        // working absorption coefficient (the bound)
  double kappa_exact = 0.0;  // k_p chi''
  double theta_crit_ratio = 0.0;
  std::vector<std::string> warnings;
};

PolaritonState polariton_state(const SusceptibilityInput& in);

}  // namespace sagnac
