#include "sagnac/units.hpp"

#include <cmath>
#include <string>

#include "sagnac/constants.hpp"
#include "sagnac/errors.hpp"

namespace sagnac {

using namespace constants;

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

bool finite_all(std::initializer_list<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

void AtomSpecies::validate() const {
  require(finite_all({mass, dipole_p, gamma1, gamma3, gamma13}), "atom: non-finite value");
  require(mass > 0.0, "atom.mass must be positive");
  require(gamma1 >= 0.0 && gamma3 >= 0.0, "atom decay rates gamma1, gamma3 must be >= 0");
  require(gamma13 >= 0.0, "atom.gamma13 must be >= 0");
}

double ProbeControlFields::k_p() const noexcept { return two_pi / lambda_p; }

double ProbeControlFields::omega_p() const noexcept { return speed_of_light * k_p(); }

void ProbeControlFields::validate() const {
  require(finite_all({lambda_p, k_c_parallel, rabi_p0, rabi_c, delta2, delta3}),
          "fields: non-finite value");
  require(lambda_p > 0.0, "fields.lambda_p must be positive");
  require(rabi_p0 >= 0.0, "fields.rabi_p0 must be >= 0");
  require(rabi_c > 0.0, "fields.rabi_c must be positive (EIT needs a control field)");
}

double RingGeometry::circumference() const noexcept { return two_pi * radius; }

void RingGeometry::validate() const {
  require(finite_all({radius, medium_length, cross_section, atom_density, rotation_rate}),
          "geometry: non-finite value");
  require(radius > 0.0, "geometry.radius must be positive");
  require(medium_length > 0.0, "geometry.medium_length must be positive");
  // One ulp of slack so that medium_length = 2 pi R computed elsewhere is accepted.
  require(medium_length <= circumference() * (1.0 + 1e-12),
          "geometry.medium_length exceeds the ring circumference");
  require(cross_section > 0.0, "geometry.cross_section must be positive");
  require(atom_density >= 0.0, "geometry.atom_density must be >= 0");
  require(std::abs(rotation_rate) * radius / speed_of_light <= 1e-3,
          "geometry: |rotation_rate| * radius / c exceeds 1e-3");
}

RecoilScales derive_recoil(const AtomSpecies& atom, const ProbeControlFields& fields) {
  require(atom.mass > 0.0, "atom.mass must be positive");
  require(fields.lambda_p > 0.0, "fields.lambda_p must be positive");
  const double k = fields.k_p();
  RecoilScales out;
  out.v_rec = hbar * k / atom.mass;
  out.omega_rec = hbar * k * k / (2.0 * atom.mass);
  out.eta = (k - fields.k_c_parallel) / k;
  return out;
}

Coupling coupling_constant(const AtomSpecies& atom, const ProbeControlFields& fields,
                           const RingGeometry& geometry) {
  require(geometry.cross_section > 0.0, "geometry.cross_section must be positive");
  require(fields.lambda_p > 0.0, "fields.lambda_p must be positive");
  const double omega = fields.omega_p();
  Coupling out;
  out.g = atom.dipole_p * std::sqrt(omega / (2.0 * hbar * epsilon0 * geometry.cross_section));
  out.collective_sq = out.g * out.g * geometry.atom_density * geometry.cross_section;
  return out;
}

DerivedScales derive_scales(const AtomSpecies& atom, const ProbeControlFields& fields,
                            const RingGeometry& geometry) {
  return {derive_recoil(atom, fields), coupling_constant(atom, fields, geometry)};
}

double gamma_from_dipole(double dipole, double omega) {
  require(omega > 0.0, "omega must be positive");
  const double c3 = speed_of_light * speed_of_light * speed_of_light;
  return (1.0 / (4.0 * pi * epsilon0)) * (4.0 / 3.0) * dipole * dipole * omega * omega * omega /
         (hbar * c3);
}

double dipole_from_gamma(double gamma, double omega) {
  require(omega > 0.0, "omega must be positive");
  require(gamma >= 0.0, "gamma must be >= 0");
  const double c3 = speed_of_light * speed_of_light * speed_of_light;
  return std::sqrt(gamma * 4.0 * pi * epsilon0 * 3.0 * hbar * c3 / (4.0 * omega * omega * omega));
}

double rest_energy_ratio(const AtomSpecies& atom, const ProbeControlFields& fields) {
  require(atom.mass > 0.0, "atom.mass must be positive");
  require(fields.lambda_p > 0.0, "fields.lambda_p must be positive");
  return atom.mass * speed_of_light * speed_of_light / (hbar * fields.omega_p());
}

namespace {

SpeciesPreset make_preset(std::string name, double mass, double lambda, double linewidth_hz,
                          std::string provenance) {
  SpeciesPreset p;
  p.name = std::move(name);
  p.lambda_p = lambda;
  const double gamma = two_pi * linewidth_hz;
  p.atom.mass = mass;
  p.atom.gamma1 = gamma;
  p.atom.gamma3 = gamma;
  // Illustrative ground-coherence dephasing; case studies set the loss parameter directly.
  p.atom.gamma13 = 1.0;
  p.atom.dipole_p = dipole_from_gamma(gamma, two_pi * speed_of_light / lambda);
  p.provenance = std::move(provenance);
  return p;
}

}  // namespace

SpeciesPreset rubidium87() {
  return make_preset("rb87", 1.443160648e-25, 780.241209686e-9, 6.0666e6,
                     "87Rb D2: standard alkali data (mass, wavelength, natural linewidth "
                     "2pi x 6.0666 MHz); dipole from the Einstein A coefficient; gamma1 = gamma3; "
                     "gamma13 = 1/s illustrative");
}

SpeciesPreset sodium23() {
  return make_preset("na23", 3.8175458e-26, 589.158e-9, 9.7946e6,
                     "23Na D2: standard alkali data (mass, wavelength, natural linewidth "
                     "2pi x 9.7946 MHz); dipole from the Einstein A coefficient; gamma1 = gamma3; "
                     "gamma13 = 1/s illustrative");
}

SpeciesPreset species_preset(std::string_view name) {
  if (name == "rb87") return rubidium87();
  if (name == "na23") return sodium23();
  throw InvalidParameter("unknown species preset '" + std::string(name) +
                         "' (expected rb87 or na23)");
}

}  // namespace sagnac
