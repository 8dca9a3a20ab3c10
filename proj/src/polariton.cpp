#include "sagnac/polariton.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sagnac/constants.hpp"
#include "sagnac/errors.hpp"

namespace sagnac {

using namespace constants;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidParameter(std::string(what) + " must be positive");
  }
}

}  // namespace

double tan2_theta(double collective_sq, double rabi_c) {
  require_positive(rabi_c, "rabi_c");
  if (collective_sq < 0.0) throw InvalidParameter("collective coupling must be >= 0");
  return collective_sq / (rabi_c * rabi_c);
}

double mixing_angle(double collective_sq, double rabi_c) {
  return std::atan(std::sqrt(tan2_theta(collective_sq, rabi_c)));
}

double theta_crit_ratio(double tan2, double v_rec) {
  require_positive(v_rec, "v_rec");
  return tan2 * v_rec / speed_of_light;
}

double group_velocity(double theta, double eta, double v_rec) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  return speed_of_light * c2 + eta * v_rec * s2;
}

XiValue xi(double theta, double v_rec) {
  require_positive(v_rec, "v_rec");
  if (theta == 0.0) return {inf, true};
  const double t = std::tan(theta);
  return {speed_of_light / v_rec / (t * t), false};
}

XiValue xi_from_medium(double collective_sq, double rabi_c, double v_rec) {
  require_positive(v_rec, "v_rec");
  const double t2 = tan2_theta(collective_sq, rabi_c);
  if (t2 == 0.0) return {inf, true};
  return {speed_of_light / v_rec / t2, false};
}

double xi_approx(double v_gr, double v_rec, double eta) { return v_gr / v_rec - eta; }

double collective_sq_for_xi(double xi_value, double rabi_c, double v_rec) {
  require_positive(xi_value, "xi");
  require_positive(v_rec, "v_rec");
  return speed_of_light / v_rec * rabi_c * rabi_c / xi_value;
}

Susceptibility susceptibility(const SusceptibilityInput& in) {
  require_positive(in.k_p, "k_p");
  require_positive(in.v_rec, "v_rec");
  const double t2 = tan2_theta(in.collective_sq, in.rabi_c);
  const double s = in.rabi_p * in.rabi_p / (in.rabi_c * in.rabi_c);
  const double q = 1.0 + s;

  Susceptibility out;
  out.beta = 1.0 + in.eta * (in.v_rec / speed_of_light) * t2 / (q * q * q);
  const double matter = in.matter_gate * in.eta * t2 / (q * q);
  out.chi_real = (in.rotation_rate * in.radius / speed_of_light) * (1.0 + matter) / out.beta;
  out.chi_imag = (in.gamma13 / (in.k_p * speed_of_light)) * t2 / (q * q) / out.beta;

  if (in.delta2 != 0.0 || in.delta3 != 0.0) {
    out.warnings.push_back("susceptibility assumes delta2 = delta3 = 0");
  }
  if (in.rabi_c * in.rabi_c < 100.0 * in.gamma13 * in.gamma1) {
    std::ostringstream msg;
    msg << "EIT condition rabi_c^2 >> gamma13*gamma1 not met (ratio "
        << in.rabi_c * in.rabi_c / (in.gamma13 * in.gamma1) << ")";
    out.warnings.push_back(msg.str());
  }
  return out;
}

Absorption absorption_coefficient(const Susceptibility& chi, double k_p, double gamma13,
                                  double v_rec, double xi_value) {
  require_positive(xi_value, "xi");
  require_positive(v_rec, "v_rec");
  return {gamma13 / (v_rec * xi_value), k_p * chi.chi_imag};
}

PolaritonState polariton_state(const SusceptibilityInput& in) {
  PolaritonState st;
  st.tan2_theta = tan2_theta(in.collective_sq, in.rabi_c);
  st.theta = std::atan(std::sqrt(st.tan2_theta));
  st.v_gr = group_velocity(st.theta, in.eta, in.v_rec);
  const XiValue x = xi_from_medium(in.collective_sq, in.rabi_c, in.v_rec);
  st.xi = x.value;
  st.xi_infinite = x.infinite;
  st.s = in.rabi_p * in.rabi_p / (in.rabi_c * in.rabi_c);
  st.theta_crit_ratio = theta_crit_ratio(st.tan2_theta, in.v_rec);
  const Susceptibility chi = susceptibility(in);
  st.warnings = chi.warnings;
  if (x.infinite) {
    st.kappa = 0.0;
    st.kappa_exact = 0.0;
  } else {
    const Absorption k = absorption_coefficient(chi, in.k_p, in.gamma13, in.v_rec, st.xi);
    st.kappa = k.bound;
    st.kappa_exact = k.exact;
  }
  return st;
}

}  // namespace sagnac
