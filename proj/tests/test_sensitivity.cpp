#include <doctest.h>

#include <cmath>
#include <vector>

#include "sagnac/constants.hpp"
#include "sagnac/errors.hpp"
#include "sagnac/propagation.hpp"
#include "sagnac/sensitivity.hpp"

using namespace sagnac;
using doctest::Approx;

namespace {

FluxParams flux_example() {
  FluxParams f;
  f.area = 2 * constants::pi * 1.5e-3 * 1.5e-3;
  f.cross_section = 1e-6;
  f.density = 1e20;
  f.v_rec = 2.946e-2;
  f.time = 1.0;
  f.mass = 3.8175458e-26;
  return f;
}

}  // namespace

TEST_CASE("detector photon number") {
  CHECK(detector_photons(1e-6, 1e20, 2.946e-2, 1.0, 2.0, 1.0 / 3.0, 1.0).n_d ==
        Approx(722515222460.7128).epsilon(1e-12));
  CHECK(detector_photons(1e-6, 1e20, 2.946e-2, 1.0, 2.0, 0.0, 1.0).n_d == 0.0);
  CHECK(detector_photons(1e-6, 1e20, 2.946e-2, 1.0, 2.0, 0.25, 0.0).n_d ==
        Approx(1e-6 * 1e20 * 2.946e-2 * 2.0 * 0.25).epsilon(1e-15));
  const PhotonCount low = detector_photons(1e-12, 1e10, 1e-2, 1e-3, 1.0, 1e-3, 0.0);
  CHECK(low.n_d < 1.0);
  CHECK(low.warnings.size() == 1);
}

TEST_CASE("photon number from the detected power agrees with the medium form") {
  const SpeciesPreset rb = rubidium87();
  for (double xi_target : {0.01, 2.0, 300.0}) {
    for (double s : {1e-4, 1.0 / 3.0, 5.0}) {
      ProbeControlFields f;
      f.lambda_p = rb.lambda_p;
      f.rabi_c = 2e6;
      f.rabi_p0 = f.rabi_c * std::sqrt(s);
      RingGeometry g;
      g.radius = 1.5e-3;
      g.medium_length = 1e-3;
      g.cross_section = 1e-6;
      const double v = derive_recoil(rb.atom, f).v_rec;
      // density realising xi_target with the dipole coupling of this field
      g.atom_density = 1.0;
      const double per_atom = coupling_constant(rb.atom, f, g).collective_sq;
      g.atom_density = collective_sq_for_xi(xi_target, f.rabi_c, v) / per_atom;
      const double xi = xi_from_medium(coupling_constant(rb.atom, f, g).collective_sq, f.rabi_c, v)
                            .value;
      const double a = 0.7;
      const double n1 = detector_photons(g.cross_section, g.atom_density, v, 2.0, xi, s, a).n_d;
      const double n2 = detector_photons_from_power(g.cross_section, rb.atom.dipole_p,
                                                    f.omega_p(), f.rabi_p0, 2.0, xi, a);
      CHECK(n2 == Approx(n1).epsilon(1e-9));
    }
  }
}

TEST_CASE("SNR shape factor") {
  CHECK(snr_shape(1.0 / 3.0, 100.0, 50.0) == Approx(0.019614910576702362).epsilon(1e-13));
  CHECK(snr_shape(1.0 / 3.0, 100.0, 50.0) == Approx(asymptotic_g_max(50.0)).epsilon(0.01));
  CHECK(asymptotic_g_max(1.0) ==
        Approx(4 / (3 * std::sqrt(3.0)) * 27.0 / 128 * std::sqrt(2.0) * std::exp(-0.5))
            .epsilon(1e-14));
  CHECK(snr_shape(0.0, 2.0, 1.0) == 0.0);
}

TEST_CASE("SNR scalings") {
  const FluxParams f = flux_example();
  CHECK(snr(0.0, f, 1.0 / 3, 2.0, 1.0) == 0.0);
  FluxParams f2 = f;
  f2.time = 2.0;
  CHECK(snr(1e-9, f2, 1.0 / 3, 2.0, 1.0) ==
        Approx(std::sqrt(2.0) * snr(1e-9, f, 1.0 / 3, 2.0, 1.0)).epsilon(1e-14));
  CHECK(snr(1e-9, f, 1.0 / 3, 2.0, 1.0) == Approx(1e-9 / f.rate_scale() *
                                                  snr_shape(1.0 / 3, 2.0, 1.0))
                                               .epsilon(1e-14));
}

TEST_CASE("optimum operating point") {
  const std::vector<double> as{0.05, 0.5, 5.0, 50.0, 500.0, 5000.0};
  const std::vector<Optimum> table = optimum_table(as);
  REQUIRE(table.size() == as.size());

  for (const Optimum& o : table) {
    CAPTURE(o.a);
    // stationarity in log coordinates via central differences
    const double h = 1e-4;
    const double ds = (snr_shape(o.s_opt * (1 + h), o.xi_opt, o.a) -
                       snr_shape(o.s_opt * (1 - h), o.xi_opt, o.a)) / (2 * h);
    const double dx = (snr_shape(o.s_opt, o.xi_opt * (1 + h), o.a) -
                       snr_shape(o.s_opt, o.xi_opt * (1 - h), o.a)) / (2 * h);
    CHECK(std::abs(ds) <= 1e-6 * o.g_max);
    CHECK(std::abs(dx) <= 1e-6 * o.g_max);
    CHECK(o.g_max == snr_shape(o.s_opt, o.xi_opt, o.a));
    CHECK(o.f_estimate == Approx(1 / (std::sqrt(o.a) * o.g_max)).epsilon(1e-14));
    // small a: deviates from (1/3, 2a) but stays bounded
    CHECK(o.s_opt > 0.1);
    CHECK(o.s_opt < 1.0);
    CHECK(o.xi_opt / o.a > 1.0);
    CHECK(o.xi_opt / o.a < 10.0);
    if (o.a >= 50) {
      CHECK(std::abs(o.s_opt - 1.0 / 3) <= 0.02 / 3);
      CHECK(std::abs(o.xi_opt - 2 * o.a) <= 0.04 * o.a);
      CHECK(o.g_max == Approx(asymptotic_g_max(o.a)).epsilon(0.02));
    }
  }
  const Optimum& big = table.back();
  CHECK(big.s_opt == Approx(1.0 / 3).epsilon(5e-3));
  CHECK(big.xi_opt == Approx(1e4).epsilon(5e-3));

  // the grid search never does worse than any coarse sample
  const Optimum o = optimize_snr(50.0);
  for (double s = 1e-4; s <= 1e2; s *= 1.3) {
    for (double x = 0.05; x <= 5e4; x *= 1.3) CHECK(snr_shape(s, x, 50.0) <= o.g_max);
  }
  CHECK_THROWS_AS(optimize_snr(0.0), InvalidParameter);
}

TEST_CASE("prefactor f") {
  const double f = prefactor_f();
  CHECK(f >= 7.1);
  CHECK(f <= 7.3);
  CHECK(f == Approx(1 / (std::sqrt(1e4) * asymptotic_g_max(1e4))).epsilon(1e-3));
  const double f3 = optimize_snr(1e3).f_estimate;
  CHECK(std::abs(f3 - f) / f < 5e-3);
}

TEST_CASE("minimum detectable rotation rate") {
  const FluxParams f = flux_example();
  for (double a : {0.5, 2.9, 100.0}) {
    const Optimum o = optimize_snr(a);
    const double wmin = omega_min(f, a);
    CHECK(snr(wmin, f, o.s_opt, o.xi_opt, a) == Approx(1.0).epsilon(1e-6));

    FluxParams twice_area = f;
    twice_area.area *= 2;
    CHECK(omega_min(twice_area, a) == Approx(wmin / 2).epsilon(1e-14));
    FluxParams dense = f;
    dense.density *= 4;
    CHECK(omega_min(dense, a) == Approx(wmin / 2).epsilon(1e-14));
    CHECK(omega_min_asymptotic(f, a) == Approx(f.rate_scale() * prefactor_f() * std::sqrt(a)));
  }
}

TEST_CASE("case studies") {
  const SpeciesPreset na = sodium23();
  const SpeciesPreset rb = rubidium87();
  CHECK(geometry_preset("gupta").geometry.radius == Approx(1.5e-3));
  CHECK(geometry_preset("arnold").geometry.radius == Approx(48e-3));
  CHECK_THROWS_AS(geometry_preset("nobody"), InvalidParameter);

  for (const SpeciesPreset& sp : {na, rb}) {
    for (double a : {1.0, 2.9, 40.0}) {
      const SensitivityReport g = case_study("gupta", sp, a, 1.0);
      const SensitivityReport ar = case_study("arnold", sp, a, 1.0);
      CHECK(g.omega_min / ar.omega_min == Approx(1024.0).epsilon(1e-10));
      CHECK(g.delta_phi_noise == Approx(1 / std::sqrt(g.n_d)).epsilon(1e-14));
      CHECK(g.snr == Approx(1.0).epsilon(1e-6));
      CHECK(g.assumptions.size() >= 4);
      CHECK(g.comparisons.size() == 2);
    }
  }

  const SensitivityReport na_g = case_study("gupta", na, 2.9, 1.0);
  CHECK(na_g.omega_min == Approx(1.4e-9).epsilon(0.07));
  CHECK(na_g.omega_min_asymptotic == Approx(1.4e-9).epsilon(0.07));
  CHECK(case_study("arnold", na, 2.9, 1.0).omega_min == Approx(1.4e-12).epsilon(0.07));

  const double rb_g = case_study("gupta", rb, 1.0, 1.0).omega_min;
  CHECK(rb_g > 1.4e-9 / 3);
  CHECK(rb_g < 1.4e-9 * 3);

  // disk convention has half the area of R L_M with L_M = 2 pi R
  const SensitivityReport disk = case_study("gupta", na, 2.9, 1.0, AreaConvention::Disk);
  CHECK(disk.omega_min == Approx(2 * na_g.omega_min).epsilon(1e-12));
  CHECK(parse_area_convention("disk") == AreaConvention::Disk);
  CHECK(parse_area_convention(to_string(AreaConvention::RingLength)) ==
        AreaConvention::RingLength);
}

TEST_CASE("closed-form SNR matches the composed pipeline") {
  const SpeciesPreset rb = rubidium87();
  ProbeControlFields fields;
  fields.lambda_p = rb.lambda_p;
  fields.rabi_c = 2e6;
  RingGeometry geo;
  geo.radius = 1.5e-3;
  geo.medium_length = constants::two_pi * geo.radius;
  geo.cross_section = 1e-6;
  geo.atom_density = 1e20;
  const double omega = 1e-6;
  const double v = derive_recoil(rb.atom, fields).v_rec;

  for (double a : {1.0, 50.0}) {
    for (double s : {0.05, 1.0 / 3, 2.0}) {
      const double xi = 2 * a;
      AtomSpecies atom = rb.atom;
      atom.gamma13 = a * v / geo.medium_length;
      const Medium m = Medium::from_inputs(atom, fields, geo).with_xi(xi);
      REQUIRE(m.loss_parameter() == Approx(a).epsilon(1e-12));
      const SignalPhase sig =
          signal_phase(omega, m, MediumPreparation::superfluid_ring(), fields.rabi_c * std::sqrt(s),
                       PropagationGrid::make(257, m.length), SaturationProfile::Frozen);
      const double n_d = detector_photons(geo.cross_section, geo.atom_density, v, 1.0, xi, s, a).n_d;

      FluxParams flux;
      flux.area = geo.radius * geo.medium_length;
      flux.cross_section = geo.cross_section;
      flux.density = geo.atom_density;
      flux.v_rec = v;
      flux.mass = atom.mass;
      const double closed = snr(omega, flux, s, xi, a);
      CHECK(sig.delta_phi_sig * std::sqrt(n_d) == Approx(closed).epsilon(0.05));
      // the matter term alone is the closed form exactly
      CHECK(sig.matter_part * std::sqrt(n_d) == Approx(closed).epsilon(1e-9));
    }
  }
}
