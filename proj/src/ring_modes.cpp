#include "sagnac/ring_modes.hpp"

#include <cmath>
#include <string>

#include "sagnac/constants.hpp"
#include "sagnac/errors.hpp"

namespace sagnac {

using namespace constants;

void MediumPreparation::validate() const {
  if (kind == PreparationKind::ThermalRing && !(temperature > 0.0)) {
    throw InvalidParameter("preparation.temperature must be positive for a thermal ring");
  }
}

std::string_view to_string(PreparationKind kind) {
  switch (kind) {
    case PreparationKind::SuperfluidRing: return "superfluid_ring";
    case PreparationKind::ThermalRing: return "thermal_ring";
    case PreparationKind::LongitudinalTrap: return "longitudinal_trap";
  }
  return "unknown";
}

PreparationKind parse_preparation_kind(std::string_view name) {
  if (name == "superfluid_ring") return PreparationKind::SuperfluidRing;
  if (name == "thermal_ring") return PreparationKind::ThermalRing;
  if (name == "longitudinal_trap") return PreparationKind::LongitudinalTrap;
  throw InvalidParameter("unknown preparation kind '" + std::string(name) +
                         "' (expected superfluid_ring, thermal_ring or longitudinal_trap)");
}

namespace {

void check_ring(double radius, double mass) {
  if (!(radius > 0.0)) throw InvalidParameter("radius must be positive");
  if (!(mass > 0.0)) throw InvalidParameter("mass must be positive");
}

}  // namespace

double mode_energy(long n, double rotation_rate, double radius, double mass) {
  check_ring(radius, mass);
  const double nd = static_cast<double>(n);
  return nd * hbar * rotation_rate + nd * nd * hbar * hbar / (2.0 * mass * radius * radius);
}

double n_min(double rotation_rate, double radius, double mass) {
  check_ring(radius, mass);
  return -mass * rotation_rate * radius * radius / hbar;
}

long ground_mode(double rotation_rate, double radius, double mass) {
  const double x = n_min(rotation_rate, radius, mass);
  const double lo = std::floor(x);
  const double hi = lo + 1.0;
  const double dlo = x - lo;
  const double dhi = hi - x;
  // The parabola is symmetric about x, so the nearer integer has the lower energy.
  if (dlo < dhi) return static_cast<long>(lo);
  if (dhi < dlo) return static_cast<long>(hi);
  return std::abs(lo) < std::abs(hi) ? static_cast<long>(lo) : static_cast<long>(hi);
}

double boltzmann_mean_winding(double rotation_rate, double radius, double mass,
                              double temperature, long* terms_used) {
  check_ring(radius, mass);
  if (!(temperature > 0.0)) throw InvalidParameter("temperature must be positive");

  const double kt = boltzmann * temperature;
  const double center = std::round(n_min(rotation_rate, radius, mass));
  const long n0 = static_cast<long>(center);
  const double e0 = mode_energy(n0, rotation_rate, radius, mass);
  auto weight = [&](long n) {
    return std::exp(-(mode_energy(n, rotation_rate, radius, mass) - e0) / kt);
  };

  double z = weight(n0);
  double first = static_cast<double>(n0) * z;
  long terms = 1;
  // Walk both sides together; the weights are monotone away from the minimum.
  for (long k = 1;; ++k) {
    const double wp = weight(n0 + k);
    const double wm = weight(n0 - k);
    z += wp + wm;
    first += static_cast<double>(n0 + k) * wp + static_cast<double>(n0 - k) * wm;
    terms += 2;
    if (wp + wm < 1e-15 * z) break;
    if (k > 100000000L) throw NumericalError("thermal sum did not converge");
  }
  if (terms_used) *terms_used = terms;
  return first / z;
}

ThermalPhase thermal_phase(double rotation_rate, double radius, double mass, double temperature) {
  check_ring(radius, mass);
  if (!(temperature > 0.0)) throw InvalidParameter("temperature must be positive");

  ThermalPhase out;
  out.phase = two_pi * rotation_rate * radius * radius / (hbar / mass);
  out.mean_winding = boltzmann_mean_winding(rotation_rate, radius, mass, temperature, &out.terms);

  const double level_scale =
      hbar * std::abs(rotation_rate) + hbar * hbar / (2.0 * mass * radius * radius);
  if (boltzmann * temperature < 10.0 * level_scale) {
    out.warnings.push_back(
        "k_B T is not large compared with the ring level spacing; the closed-form thermal "
        "phase -2 pi n_min is not reached");
  }
  return out;
}

int matter_term_gate(const MediumPreparation& prep) {
  return prep.kind == PreparationKind::SuperfluidRing ? 1 : 0;
}

}  // namespace sagnac
