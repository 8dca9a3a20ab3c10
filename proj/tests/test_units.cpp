#include <doctest.h>

#include <cmath>
#include <random>

#include "sagnac/constants.hpp"
#include "sagnac/errors.hpp"
#include "sagnac/units.hpp"

using namespace sagnac;
using doctest::Approx;

namespace {

// Reference values from tests/oracles/freeze_values.py (40-digit mpmath).
constexpr double m_rb = 1.4431606e-25;
constexpr double m_na = 3.8175458e-26;

AtomSpecies atom_with_mass(double m) {
  AtomSpecies a;
  a.mass = m;
  return a;
}

ProbeControlFields fields_at(double lambda) {
  ProbeControlFields f;
  f.lambda_p = lambda;
  f.rabi_c = 1e6;
  return f;
}

}  // namespace

TEST_CASE("recoil velocity of Rb and Na") {
  const RecoilScales rb = derive_recoil(atom_with_mass(m_rb), fields_at(780.241e-9));
  CHECK(rb.v_rec == Approx(5.884541062812e-3).epsilon(1e-11));
  CHECK(rb.eta == 1.0);
  const RecoilScales na = derive_recoil(atom_with_mass(m_na), fields_at(589.0e-9));
  CHECK(na.v_rec == Approx(2.946839470809e-2).epsilon(1e-11));
}

TEST_CASE("recoil frequency and velocity are consistent") {
  const ProbeControlFields f = fields_at(780.241e-9);
  const RecoilScales r = derive_recoil(atom_with_mass(m_rb), f);
  CHECK(r.omega_rec == Approx(0.5 * r.v_rec * f.k_p()).epsilon(1e-14));
  CHECK(r.v_rec == Approx(constants::hbar * f.k_p() / m_rb).epsilon(1e-14));
}

TEST_CASE("eta vanishes without momentum transfer and is scale invariant") {
  ProbeControlFields f = fields_at(780e-9);
  f.k_c_parallel = f.k_p();
  CHECK(derive_recoil(atom_with_mass(m_rb), f).eta == 0.0);

  f.k_c_parallel = 0.3 * f.k_p();
  const double eta = derive_recoil(atom_with_mass(m_rb), f).eta;
  ProbeControlFields g = fields_at(780e-9 / 2.5);
  g.k_c_parallel = 0.3 * g.k_p();
  CHECK(derive_recoil(atom_with_mass(m_rb), g).eta == Approx(eta).epsilon(1e-14));
  CHECK(eta == Approx(0.7).epsilon(1e-14));
}

TEST_CASE("invalid recoil inputs") {
  CHECK_THROWS_AS(derive_recoil(atom_with_mass(0.0), fields_at(780e-9)), InvalidParameter);
  CHECK_THROWS_AS(derive_recoil(atom_with_mass(-1e-25), fields_at(780e-9)), InvalidParameter);
  CHECK_THROWS_AS(derive_recoil(atom_with_mass(m_rb), fields_at(0.0)), InvalidParameter);
}

TEST_CASE("rest energy over photon energy") {
  CHECK(rest_energy_ratio(atom_with_mass(m_rb), fields_at(780.241e-9)) ==
        Approx(5.0945767019e10).epsilon(1e-10));
  CHECK(rest_energy_ratio(atom_with_mass(m_na), fields_at(589.0e-9)) ==
        Approx(1.01733555889e10).epsilon(1e-10));
  CHECK(rest_energy_ratio(atom_with_mass(2 * m_rb), fields_at(780.241e-9)) ==
        Approx(2 * rest_energy_ratio(atom_with_mass(m_rb), fields_at(780.241e-9))).epsilon(1e-15));
  // c / v_rec is the same number.
  const double v = derive_recoil(atom_with_mass(m_rb), fields_at(780.241e-9)).v_rec;
  CHECK(constants::speed_of_light / v ==
        Approx(rest_energy_ratio(atom_with_mass(m_rb), fields_at(780.241e-9))).epsilon(1e-14));
}

TEST_CASE("Einstein A coefficient and its inverse") {
  CHECK(gamma_from_dipole(0.0, 2.4e15) == 0.0);
  const double g1 = gamma_from_dipole(1e-29, 2.4e15);
  CHECK(gamma_from_dipole(2e-29, 2.4e15) == Approx(4 * g1).epsilon(1e-14));
  CHECK(dipole_from_gamma(3.81e7, 2.414e15) == Approx(2.534169459e-29).epsilon(1e-9));
  CHECK_THROWS_AS(gamma_from_dipole(1e-29, 0.0), InvalidParameter);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double gamma = 3e7 * std::pow(10.0, u(rng));
    const double omega = 2.4e15 * std::pow(10.0, u(rng) / 3.0);
    CHECK(gamma_from_dipole(dipole_from_gamma(gamma, omega), omega) ==
          Approx(gamma).epsilon(1e-12));
  }
}

TEST_CASE("coupling constant scaling") {
  AtomSpecies atom = rubidium87().atom;
  const ProbeControlFields f = fields_at(rubidium87().lambda_p);
  RingGeometry g;
  g.radius = 1e-3;
  g.medium_length = 1e-3;
  g.cross_section = 1e-6;
  g.atom_density = 1e20;
  const Coupling c1 = coupling_constant(atom, f, g);
  g.cross_section = 2e-6;
  const Coupling c2 = coupling_constant(atom, f, g);
  CHECK(c2.g == Approx(c1.g / std::sqrt(2.0)).epsilon(1e-14));
  // g^2 rho F does not depend on F.
  CHECK(c2.collective_sq == Approx(c1.collective_sq).epsilon(1e-14));
  const double expected = atom.dipole_p * atom.dipole_p * f.omega_p() * g.atom_density /
                          (2 * constants::hbar * constants::epsilon0);
  CHECK(c1.collective_sq == Approx(expected).epsilon(1e-13));

  atom.dipole_p = 0.0;
  CHECK(coupling_constant(atom, f, g).g == 0.0);
  g.cross_section = 0.0;
  CHECK_THROWS_AS(coupling_constant(atom, f, g), InvalidParameter);
}

TEST_CASE("coupling round-trips through the dipole-from-linewidth inversion") {
  const double omega = constants::two_pi * constants::speed_of_light / 780e-9;
  const double gamma = constants::two_pi * 6.07e6;
  AtomSpecies atom = atom_with_mass(m_rb);
  atom.dipole_p = dipole_from_gamma(gamma, omega);
  RingGeometry g;
  g.cross_section = 1e-6;
  const Coupling c = coupling_constant(atom, fields_at(780e-9), g);
  const double d_back = c.g / std::sqrt(omega / (2 * constants::hbar * constants::epsilon0 * 1e-6));
  CHECK(gamma_from_dipole(d_back, omega) == Approx(gamma).epsilon(1e-12));
}

TEST_CASE("domain validation") {
  AtomSpecies a = rubidium87().atom;
  CHECK_NOTHROW(a.validate());
  CHECK(a.gamma2() == a.gamma1 + a.gamma3);
  a.gamma3 = -1.0;
  CHECK_THROWS_AS(a.validate(), InvalidParameter);

  ProbeControlFields f = fields_at(780e-9);
  CHECK_NOTHROW(f.validate());
  f.rabi_c = 0.0;
  CHECK_THROWS_AS(f.validate(), InvalidParameter);

  RingGeometry g;
  g.radius = 1e-3;
  g.medium_length = constants::two_pi * 1e-3;
  g.cross_section = 1e-6;
  CHECK_NOTHROW(g.validate());
  g.medium_length = 7e-3;
  CHECK_THROWS_AS(g.validate(), InvalidParameter);
  g.medium_length = 1e-3;
  g.rotation_rate = 2e-3 * constants::speed_of_light / g.radius;
  CHECK_THROWS_AS(g.validate(), InvalidParameter);
}

TEST_CASE("species presets") {
  for (const char* name : {"rb87", "na23"}) {
    const SpeciesPreset p = species_preset(name);
    CHECK(p.name == name);
    CHECK_NOTHROW(p.atom.validate());
    const double omega = constants::two_pi * constants::speed_of_light / p.lambda_p;
    CHECK(gamma_from_dipole(p.atom.dipole_p, omega) == Approx(p.atom.gamma1).epsilon(1e-12));
    CHECK_FALSE(p.provenance.empty());
  }
  CHECK_THROWS_AS(species_preset("cs133"), InvalidParameter);
}
