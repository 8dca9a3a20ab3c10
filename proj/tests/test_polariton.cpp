#include <doctest.h>

#include <cmath>
#include <random>

#include "sagnac/constants.hpp"
#include "sagnac/errors.hpp"
#include "sagnac/polariton.hpp"
#include "sagnac/units.hpp"

using namespace sagnac;
using doctest::Approx;
using constants::speed_of_light;

namespace {

constexpr double vr = 5.885e-3;

SusceptibilityInput base_input() {
  SusceptibilityInput in;
  in.rabi_c = 2e6;
  in.rabi_p = 0.0;
  in.collective_sq = collective_sq_for_xi(2.0, in.rabi_c, vr);
  in.gamma13 = 1e3;
  in.gamma1 = 3.7e7;
  in.rotation_rate = 7.29e-5;
  in.radius = 1.5e-3;
  in.k_p = constants::two_pi / 780e-9;
  in.v_rec = vr;
  return in;
}

}  // namespace

TEST_CASE("mixing angle") {
  CHECK(mixing_angle(0.0, 3.0) == 0.0);
  CHECK(mixing_angle(9.0, 3.0) == Approx(constants::pi / 4).epsilon(1e-15));
  const double t2 = speed_of_light / vr;
  const double theta = mixing_angle(t2 * 4.0, 2.0);
  // tan near pi/2 amplifies the rounding of theta by about tan(theta)
  CHECK(theta_crit_ratio(std::tan(theta) * std::tan(theta), vr) == Approx(1.0).epsilon(1e-9));
  CHECK(xi(theta, vr).value == Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(mixing_angle(1.0, 0.0), InvalidParameter);
}

TEST_CASE("group velocity") {
  CHECK(group_velocity(0.0, 1.0, vr) == speed_of_light);
  CHECK(group_velocity(constants::pi / 2, 1.0, vr) == Approx(vr).epsilon(1e-12));
  const double theta_c = std::atan(std::sqrt(speed_of_light / vr));
  CHECK(group_velocity(theta_c, 1.0, vr) ==
        Approx(2 * speed_of_light * vr / (speed_of_light + vr)).epsilon(1e-10));

  double prev = group_velocity(0.0, 1.0, vr);
  for (int i = 1; i <= 2000; ++i) {
    const double v = group_velocity(constants::pi / 2 * i / 2000.0, 1.0, vr);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("xi exact and approximate forms") {
  CHECK(xi(0.0, vr).infinite);
  CHECK(std::isinf(xi(0.0, vr).value));
  CHECK(xi_approx(3 * vr, vr, 1.0) == Approx(2.0).epsilon(1e-15));
  const double th = std::atan(std::sqrt(10 * speed_of_light / vr));
  CHECK(xi(th, vr).value == Approx(0.1).epsilon(1e-10));

  for (double x = 1e-3; x <= 1e3; x *= 1.7) {
    const double theta = std::atan(std::sqrt(speed_of_light / vr / x));
    const double vg = group_velocity(theta, 1.0, vr);
    const double exact = xi(theta, vr).value;
    const double approx = xi_approx(vg, vr, 1.0);
    CHECK(exact == Approx(x).epsilon(1e-9));
    // (exact - approx) / exact = v_gr / c identically; cancellation limits the check
    CHECK((exact - approx) / exact == Approx(vg / speed_of_light).epsilon(1e-2));
  }
}

TEST_CASE("susceptibility limits") {
  SusceptibilityInput in = base_input();

  SUBCASE("no rotation, no dispersion") {
    in.rotation_rate = 0.0;
    CHECK(susceptibility(in).chi_real == 0.0);
  }
  SUBCASE("perfect EIT, no absorption") {
    in.gamma13 = 0.0;
    CHECK(susceptibility(in).chi_imag == 0.0);
  }
  SUBCASE("strong probe gives the bare light value") {
    in.rabi_p = in.rabi_c * 100.0;  // s = 1e4
    const Susceptibility chi = susceptibility(in);
    const double bare = in.rotation_rate * in.radius / speed_of_light;
    CHECK(chi.beta == Approx(1.0).epsilon(1e-12));
    CHECK(chi.chi_real == Approx(bare).epsilon(1e-6));
  }
  SUBCASE("odd in rotation, even absorption") {
    const Susceptibility a = susceptibility(in);
    in.rotation_rate = -in.rotation_rate;
    const Susceptibility b = susceptibility(in);
    CHECK(b.chi_real == -a.chi_real);
    CHECK(b.chi_imag == a.chi_imag);
  }
  SUBCASE("EIT-condition warnings") {
    CHECK(susceptibility(in).warnings.empty());
    in.delta3 = 10.0;
    CHECK(susceptibility(in).warnings.size() == 1);
    in.delta3 = 0.0;
    in.rabi_c = 1e3;
    CHECK(susceptibility(in).warnings.size() == 1);
  }
}

TEST_CASE("weak-field limit reproduces the two-term phase integrand") {
  const SpeciesPreset rb = rubidium87();
  ProbeControlFields f;
  f.lambda_p = rb.lambda_p;
  f.rabi_c = 2e6;
  const double v = derive_recoil(rb.atom, f).v_rec;
  const double mc2 = rest_energy_ratio(rb.atom, f);
  const double omega = 7.29e-5, radius = 1.5e-3;

  for (int i = 0; i <= 60; ++i) {
    const double x = std::pow(10.0, -3.0 + 6.0 * i / 60.0);
    SusceptibilityInput in;
    in.rabi_c = f.rabi_c;
    in.collective_sq = collective_sq_for_xi(x, f.rabi_c, v);
    in.rotation_rate = omega;
    in.radius = radius;
    in.k_p = f.k_p();
    in.v_rec = v;
    const double got = in.k_p * susceptibility(in).chi_real;
    const double expect = constants::two_pi * omega * radius / (f.lambda_p * speed_of_light) *
                          (x / (x + 1) + mc2 / (x + 1));
    CHECK(got == Approx(expect).epsilon(1e-6));
  }
}

TEST_CASE("absorption coefficient") {
  Susceptibility chi;
  CHECK(absorption_coefficient(chi, 1.0, 0.0, vr, 2.0).bound == 0.0);
  CHECK(absorption_coefficient(chi, 1.0, 1e3, 5.885e-3, 2.0).bound ==
        Approx(84961.767204758).epsilon(1e-10));
  CHECK_THROWS_AS(absorption_coefficient(chi, 1.0, 1e3, vr, 0.0), InvalidParameter);

  SUBCASE("weak-probe exact value sits below the bound by xi/(xi+1)") {
    const SusceptibilityInput in = base_input();
    const PolaritonState st = polariton_state(in);
    CHECK(st.kappa == Approx(84961.767204758).epsilon(1e-9));
    CHECK(st.kappa_exact == Approx(st.kappa * st.xi / (st.xi + 1)).epsilon(1e-12));
  }

  SUBCASE("exact value never exceeds the bound") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto lu = [&](double lo, double hi) { return lo * std::pow(hi / lo, u(rng)); };
    for (int t = 0; t < 1000; ++t) {
      SusceptibilityInput in = base_input();
      in.rabi_c = lu(1e4, 1e8);
      in.rabi_p = in.rabi_c * std::sqrt(lu(1e-6, 1e3));
      in.v_rec = lu(1e-3, 1e-1);
      in.collective_sq = collective_sq_for_xi(lu(1e-4, 1e4), in.rabi_c, in.v_rec);
      in.gamma13 = lu(1e-2, 1e4);
      in.k_p = lu(1e6, 1e7);
      const PolaritonState st = polariton_state(in);
      CHECK(st.kappa_exact >= 0.0);
      CHECK(st.kappa_exact <= st.kappa * (1 + 1e-12));
      CHECK(st.v_gr == Approx(speed_of_light * std::pow(std::cos(st.theta), 2) +
                              in.v_rec * std::pow(std::sin(st.theta), 2))
                           .epsilon(1e-12));
    }
  }
}

TEST_CASE("polariton state without medium") {
  SusceptibilityInput in = base_input();
  in.collective_sq = 0.0;
  const PolaritonState st = polariton_state(in);
  CHECK(st.xi_infinite);
  CHECK(st.kappa == 0.0);
  CHECK(st.v_gr == speed_of_light);
  CHECK(st.theta_crit_ratio == 0.0);
}
