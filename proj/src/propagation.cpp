#include "sagnac/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "sagnac/constants.hpp"
#include "sagnac/errors.hpp"

namespace sagnac {

using namespace constants;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double max_step_change = 0.1;
constexpr int max_substeps = 1 << 20;

// Single-pass phase-rate coefficients in units of k_p Omega R / c.
struct RateSplit {
  double light = 0.0;
  double matter = 0.0;
};

RateSplit weak_split(const Medium& m, int gate) {
  const XiValue x = m.xi();
  if (x.infinite) return {1.0, 0.0};
  const double denom = x.value + m.eta;
  return {x.value / denom, gate * m.rest_energy_ratio() * m.eta / denom};
}

RateSplit saturated_split(const Medium& m, int gate, double s) {
  const XiValue x = m.xi();
  if (x.infinite) return {1.0, 0.0};
  const double q = 1.0 + s;
  const double denom = x.value + m.eta / (q * q * q);
  return {x.value / denom, gate * m.rest_energy_ratio() * m.eta / (q * q) / denom};
}

double loss_rate(const Medium& m) { return m.gamma13 * m.tan2() / speed_of_light; }

void append(std::vector<std::string>& to, const std::vector<std::string>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

}  // namespace

// Medium -------------------------------------------------------------------

Medium Medium::from_inputs(const AtomSpecies& atom, const ProbeControlFields& fields,
                           const RingGeometry& geometry) {
  atom.validate();
  fields.validate();
  geometry.validate();
  const DerivedScales d = derive_scales(atom, fields, geometry);
  Medium m;
  m.k_p = fields.k_p();
  m.v_rec = d.recoil.v_rec;
  m.eta = d.recoil.eta;
  m.rabi_c = fields.rabi_c;
  m.collective_sq = d.coupling.collective_sq;
  m.gamma13 = atom.gamma13;
  m.radius = geometry.radius;
  m.length = geometry.medium_length;
  return m;
}

Medium Medium::with_xi(double xi_value) const {
  Medium m = *this;
  if (std::isinf(xi_value) && xi_value > 0.0) {
    m.collective_sq = 0.0;
  } else {
    m.collective_sq = collective_sq_for_xi(xi_value, rabi_c, v_rec);
  }
  return m;
}

double Medium::tan2() const { return tan2_theta(collective_sq, rabi_c); }

XiValue Medium::xi() const { return xi_from_medium(collective_sq, rabi_c, v_rec); }

double Medium::loss_parameter() const { return gamma13 * length / v_rec; }

double Medium::rest_energy_ratio() const { return speed_of_light / v_rec; }

void Medium::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(k_p)) throw InvalidParameter("medium: k_p must be positive");
  if (!positive(v_rec)) throw InvalidParameter("medium: v_rec must be positive");
  if (!positive(rabi_c)) throw InvalidParameter("medium: rabi_c must be positive");
  if (!positive(radius)) throw InvalidParameter("medium: radius must be positive");
  if (!positive(length)) throw InvalidParameter("medium: length must be positive");
  if (!(collective_sq >= 0.0)) throw InvalidParameter("medium: collective coupling must be >= 0");
  if (!(gamma13 >= 0.0)) throw InvalidParameter("medium: gamma13 must be >= 0");
}

// Grid ---------------------------------------------------------------------

PropagationGrid PropagationGrid::make(int n_points, double length) {
  if (n_points < 64) throw InvalidParameter("grid.n_points must be >= 64");
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidParameter("grid length must be positive");
  }
  return {n_points, length};
}

std::vector<double> PropagationGrid::points() const {
  std::vector<double> xs(n_points);
  for (int i = 0; i < n_points; ++i) xs[i] = x(i);
  xs.back() = length;
  return xs;
}

double simpson(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * dx * (f[0] + f[1]);
  if (n == 3) return dx / 3.0 * (f[0] + 4.0 * f[1] + f[2]);
  std::size_t intervals = n - 1;
  double tail = 0.0;
  if (intervals % 2 == 1) {
    const std::size_t k = n - 4;
    tail = 3.0 * dx / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
    intervals -= 3;
  }
  double sum = f[0] + f[intervals];
  for (std::size_t i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f[i];
  return sum * dx / 3.0 + tail;
}

// Weak field ---------------------------------------------------------------

PropagationResult propagate_weak(double rotation_rate, const Medium& medium,
                                 const MediumPreparation& prep, const PropagationGrid& grid,
                                 double rabi_p0) {
  medium.validate();
  prep.validate();
  const int gate = matter_term_gate(prep);
  const RateSplit split = weak_split(medium, gate);
  const double unit = medium.k_p * rotation_rate * medium.radius / speed_of_light;
  const double kappa = loss_rate(medium);
  const double s0 = rabi_p0 * rabi_p0 / (medium.rabi_c * medium.rabi_c);
  const XiValue xi = medium.xi();

  PropagationResult r;
  r.x = grid.points();
  const std::size_t n = r.x.size();
  std::vector<double> light(n, unit * split.light), matter(n, unit * split.matter);
  r.light_part = simpson(light, grid.dx());
  r.matter_part = simpson(matter, grid.dx());
  const double rate = unit * (split.light + split.matter);
  for (double x : r.x) {
    const double amp = std::exp(-kappa * x);
    r.amplitude_profile.push_back(amp);
    r.s_profile.push_back(s0 * amp * amp);
    r.xi_profile.push_back(xi.value);
    r.phase_cw_profile.push_back(rate * x);
    r.phase_ccw_profile.push_back(-rate * x);
  }
  r.phase_cw = r.light_part + r.matter_part;
  r.phase_ccw = -r.phase_cw;
  r.delta_phi_sig = r.phase_cw - r.phase_ccw;
  r.amplitude_ratio = r.amplitude_profile.back();
  if (s0 > 0.01) {
    std::ostringstream msg;
    msg << "weak-field propagation used with s(0) = " << s0 << " > 0.01";
    r.warnings.push_back(msg.str());
  }
  return r;
}

// All orders ---------------------------------------------------------------

DirectionResult propagate_direction(Direction direction, double rotation_rate,
                                    const Medium& medium, const MediumPreparation& prep,
                                    double rabi_p0, const PropagationGrid& grid) {
  medium.validate();
  prep.validate();
  if (!(rabi_p0 > 0.0)) throw InvalidParameter("rabi_p0 must be positive");
  const int gate = matter_term_gate(prep);
  const double omega = static_cast<int>(direction) * rotation_rate;
  const double unit = medium.k_p * omega * medium.radius / speed_of_light;
  const double kappa = loss_rate(medium);
  const double s0 = rabi_p0 * rabi_p0 / (medium.rabi_c * medium.rabi_c);

  auto rate = [&](const std::complex<double>& y) {
    const double s = s0 * std::exp(2.0 * y.real());
    const RateSplit split = saturated_split(medium, gate, s);
    return std::complex<double>(-kappa, unit * (split.light + split.matter));
  };

  const double dx = grid.dx();
  double max_rate = 0.0;
  for (int i = 0; i < grid.n_points; ++i) {
    max_rate = std::max(max_rate, std::abs(rate({-kappa * grid.x(i), 0.0})));
  }
  int m = 1;
  while (max_rate * dx / m > max_step_change) {
    if (m >= max_substeps) {
      std::ostringstream msg;
      msg << "all-order propagation: |d ln Omega_p/dx| = " << max_rate << " 1/m needs more than "
          << max_substeps << " substeps per grid interval (dx = " << dx << " m)";
      throw IntegrationError(msg.str());
    }
    m *= 2;
  }

  auto integrate = [&](int sub, std::vector<std::complex<double>>* profile) {
    const double h = dx / sub;
    std::complex<double> y{0.0, 0.0};
    if (profile) profile->push_back(y);
    for (int i = 0; i + 1 < grid.n_points; ++i) {
      for (int k = 0; k < sub; ++k) {
        const auto k1 = rate(y);
        const auto k2 = rate(y + 0.5 * h * k1);
        const auto k3 = rate(y + 0.5 * h * k2);
        const auto k4 = rate(y + h * k3);
        const auto step = h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (std::abs(step) > max_step_change) {
          std::ostringstream msg;
          msg << "all-order propagation: step change " << std::abs(step) << " exceeds "
              << max_step_change << " at x = " << grid.x(i) << " m";
          throw IntegrationError(msg.str());
        }
        y += step;
      }
      if (profile) profile->push_back(y);
    }
    return y;
  };

  const std::complex<double> coarse = integrate(m, nullptr);
  std::vector<std::complex<double>> profile;
  profile.reserve(grid.n_points);
  const std::complex<double> fine = integrate(2 * m, &profile);

  DirectionResult out;
  out.phase = fine.imag();
  out.log_amplitude = fine.real();
  out.substeps = 2 * m;
  out.richardson_error = std::abs(fine - coarse) / 15.0;
  for (const auto& y : profile) {
    out.phase_profile.push_back(y.imag());
    out.log_amplitude_profile.push_back(y.real());
  }
  return out;
}

PropagationResult propagate_allorder(double rotation_rate, const Medium& medium,
                                     const MediumPreparation& prep, double rabi_p0,
                                     const PropagationGrid& grid) {
  const DirectionResult cw = propagate_direction(Direction::Clockwise, rotation_rate, medium,
                                                 prep, rabi_p0, grid);
  const DirectionResult ccw = propagate_direction(Direction::CounterClockwise, rotation_rate,
                                                  medium, prep, rabi_p0, grid);
  const int gate = matter_term_gate(prep);
  const double unit = medium.k_p * rotation_rate * medium.radius / speed_of_light;
  const double s0 = rabi_p0 * rabi_p0 / (medium.rabi_c * medium.rabi_c);
  const XiValue xi = medium.xi();

  PropagationResult r;
  r.x = grid.points();
  r.phase_cw = cw.phase;
  r.phase_ccw = ccw.phase;
  r.delta_phi_sig = cw.phase - ccw.phase;
  r.amplitude_ratio = std::exp(cw.log_amplitude);
  r.phase_cw_profile = cw.phase_profile;
  r.phase_ccw_profile = ccw.phase_profile;
  r.richardson_error = std::max(cw.richardson_error, ccw.richardson_error);

  std::vector<double> light, matter;
  for (double la : cw.log_amplitude_profile) {
    const double amp = std::exp(la);
    const double s = s0 * amp * amp;
    const RateSplit split = saturated_split(medium, gate, s);
    r.amplitude_profile.push_back(amp);
    r.s_profile.push_back(s);
    r.xi_profile.push_back(xi.value);
    light.push_back(unit * split.light);
    matter.push_back(unit * split.matter);
  }
  r.light_part = simpson(light, grid.dx());
  r.matter_part = simpson(matter, grid.dx());

  PolaritonState st;
  st.tan2_theta = medium.tan2();
  st.theta_crit_ratio = theta_crit_ratio(st.tan2_theta, medium.v_rec);
  append(r.warnings, dispersion_regime_check(st));
  return r;
}

SignalPhase signal_phase(double rotation_rate, const Medium& medium,
                         const MediumPreparation& prep, double rabi_p0,
                         const PropagationGrid& grid, SaturationProfile mode) {
  if (std::abs(medium.eta - 1.0) > 1e-12) {
    throw InvalidParameter("signal_phase assumes eta = 1 (k_c_parallel = 0)");
  }
  SignalPhase out;
  if (mode == SaturationProfile::SelfConsistent) {
    const PropagationResult r = propagate_allorder(rotation_rate, medium, prep, rabi_p0, grid);
    out.light_part = r.light_part;
    out.matter_part = r.matter_part;
    out.s_profile = r.s_profile;
    out.warnings = r.warnings;
  } else {
    medium.validate();
    prep.validate();
    const int gate = matter_term_gate(prep);
    const double unit = medium.k_p * rotation_rate * medium.radius / speed_of_light;
    const double s0 = rabi_p0 * rabi_p0 / (medium.rabi_c * medium.rabi_c);
    const RateSplit split = saturated_split(medium, gate, s0);
    std::vector<double> light(grid.n_points, unit * split.light);
    std::vector<double> matter(grid.n_points, unit * split.matter);
    out.light_part = simpson(light, grid.dx());
    out.matter_part = simpson(matter, grid.dx());
    out.s_profile.assign(grid.n_points, s0);
  }
  out.delta_phi_sig = out.light_part + out.matter_part;
  return out;
}

std::vector<std::string> dispersion_regime_check(const PolaritonState& state) {
  std::vector<std::string> w;
  if (state.theta_crit_ratio > 1.0) {
    std::ostringstream msg;
    msg << "tan^2(theta) exceeds c/v_rec by a factor " << state.theta_crit_ratio
        << " (xi < 1): the neglected second-order kinetic term is not small";
    w.push_back(msg.str());
  }
  return w;
}

}  // namespace sagnac
