#include "sagnac/sensitivity.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "sagnac/constants.hpp"
#include "sagnac/errors.hpp"

namespace sagnac {

using namespace constants;

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidParameter(std::string(what) + " must be positive");
  }
}

constexpr double s_lo = 1e-4;
constexpr double s_hi = 1e2;
constexpr int grid_n = 64;
const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

// Maximises f on [lo, hi] (log coordinates).
template <class F>
double golden_max(F&& f, double lo, double hi) {
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-12 * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

double loss_parameter(double gamma13, double length, double v_rec) {
  require_positive(length, "medium length");
  require_positive(v_rec, "v_rec");
  if (!(gamma13 >= 0.0)) throw InvalidParameter("gamma13 must be >= 0");
  return gamma13 * length / v_rec;
}

PhotonCount detector_photons(double cross_section, double density, double v_rec, double time,
                             double xi, double s, double a) {
  require_positive(cross_section, "cross_section");
  require_positive(v_rec, "v_rec");
  require_positive(time, "detection time");
  require_positive(xi, "xi");
  if (!(density >= 0.0) || !(s >= 0.0) || !(a >= 0.0)) {
    throw InvalidParameter("density, s and a must be >= 0");
  }
  PhotonCount out;
  out.n_d = cross_section * density * v_rec * time * xi * s * std::exp(-2.0 * a / xi);
  if (out.n_d < 1.0) {
    out.warnings.push_back("fewer than one detected quantum: shot-noise estimate not meaningful");
  }
  return out;
}

double detector_photons_from_power(double cross_section, double dipole, double omega_p,
                                   double rabi_p0, double time, double xi, double a) {
  require_positive(dipole, "dipole");
  require_positive(omega_p, "omega_p");
  require_positive(xi, "xi");
  const double field = hbar * rabi_p0 / dipole;
  return 2.0 * epsilon0 * cross_section * speed_of_light / (hbar * omega_p) * field * field *
         time * std::exp(-2.0 * a / xi);
}

void FluxParams::validate() const {
  require_positive(area, "area");
  require_positive(cross_section, "cross_section");
  require_positive(density, "density");
  require_positive(v_rec, "v_rec");
  require_positive(time, "detection time");
  require_positive(mass, "mass");
}

double FluxParams::rate_scale() const {
  validate();
  return (hbar / mass) / (area * std::sqrt(cross_section * density * v_rec * time));
}

double snr_shape(double s, double xi, double a) {
  const double q = 1.0 + s;
  return std::sqrt(xi * s) * q / (xi * q * q * q + 1.0) * std::exp(-a / xi);
}

double snr(double rotation_rate, const FluxParams& flux, double s, double xi, double a) {
  return rotation_rate / flux.rate_scale() * snr_shape(s, xi, a);
}

double asymptotic_g_max(double a) {
  require_positive(a, "a");
  return 4.0 / (3.0 * std::sqrt(3.0)) * (27.0 / 128.0) * std::sqrt(2.0) * std::exp(-0.5) /
         std::sqrt(a);
}

Optimum optimize_snr(double a) {
  require_positive(a, "a");
  const std::array<double, 2> lo = {std::log(s_lo), std::log(a / 1e3)};
  const std::array<double, 2> hi = {std::log(s_hi), std::log(a * 1e3)};
  const std::array<double, 2> step = {(hi[0] - lo[0]) / (grid_n - 1),
                                      (hi[1] - lo[1]) / (grid_n - 1)};
  auto g = [a](double ls, double lx) { return snr_shape(std::exp(ls), std::exp(lx), a); };

  int bi = 0, bj = 0;
  double best = -1.0;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const double v = g(lo[0] + i * step[0], lo[1] + j * step[1]);
      if (v > best) {
        best = v;
        bi = i;
        bj = j;
      }
    }
  }
  auto boundary = [&](const char* where) {
    std::ostringstream msg;
    msg << "SNR optimum for a = " << a << " sits on the search-box edge (" << where << ")";
    throw BoundaryHit(msg.str());
  };
  if (bi == 0 || bi == grid_n - 1) boundary("s");
  if (bj == 0 || bj == grid_n - 1) boundary("xi");

  std::array<double, 2> p = {lo[0] + bi * step[0], lo[1] + bj * step[1]};
  Optimum out;
  out.a = a;
  for (int pass = 0; pass < 200; ++pass) {
    const std::array<double, 2> prev = p;
    for (int k = 0; k < 2; ++k) {
      const double l = std::max(lo[k], p[k] - step[k]);
      const double h = std::min(hi[k], p[k] + step[k]);
      p[k] = golden_max(
          [&](double v) { return k == 0 ? g(v, p[1]) : g(p[0], v); }, l, h);
    }
    out.passes = pass + 1;
    if (std::abs(p[0] - prev[0]) < 1e-8 && std::abs(p[1] - prev[1]) < 1e-8) break;
  }
  for (int k = 0; k < 2; ++k) {
    if (p[k] - lo[k] < 1e-9 || hi[k] - p[k] < 1e-9) boundary(k == 0 ? "s" : "xi");
  }
  out.s_opt = std::exp(p[0]);
  out.xi_opt = std::exp(p[1]);
  out.g_max = snr_shape(out.s_opt, out.xi_opt, a);
  out.f_estimate = 1.0 / (std::sqrt(a) * out.g_max);
  return out;
}

std::vector<Optimum> optimum_table(std::span<const double> a_values) {
  std::vector<Optimum> rows;
  rows.reserve(a_values.size());
  for (double a : a_values) rows.push_back(optimize_snr(a));
  return rows;
}

double prefactor_f() { return optimize_snr(1e4).f_estimate; }

double omega_min(const FluxParams& flux, double a) {
  return flux.rate_scale() / optimize_snr(a).g_max;
}

double omega_min_asymptotic(const FluxParams& flux, double a) {
  require_positive(a, "a");
  return flux.rate_scale() * prefactor_f() * std::sqrt(a);
}

std::string_view to_string(AreaConvention c) {
  return c == AreaConvention::RingLength ? "ring_length" : "disk";
}

AreaConvention parse_area_convention(std::string_view name) {
  if (name == "ring_length") return AreaConvention::RingLength;
  if (name == "disk") return AreaConvention::Disk;
  throw InvalidParameter("unknown area convention '" + std::string(name) +
                         "' (expected ring_length or disk)");
}

GeometryPreset geometry_preset(std::string_view name) {
  GeometryPreset p;
  double diameter = 0.0;
  if (name == "gupta") {
    diameter = 3e-3;
    p.provenance = "toroidal BEC waveguide, large-circle diameter 3 mm";
  } else if (name == "arnold") {
    diameter = 96e-3;
    p.provenance = "toroidal BEC waveguide, large-circle diameter 96 mm";
  } else {
    throw InvalidParameter("unknown case '" + std::string(name) + "' (expected gupta or arnold)");
  }
  p.name = std::string(name);
  p.geometry.radius = diameter / 2.0;
  p.geometry.medium_length = two_pi * p.geometry.radius;
  p.geometry.cross_section = 1e-6;
  p.geometry.atom_density = 1e20;
  p.geometry.rotation_rate = 0.0;
  return p;
}

double interferometer_area(const RingGeometry& geometry, AreaConvention convention) {
  if (convention == AreaConvention::Disk) return pi * geometry.radius * geometry.radius;
  return geometry.radius * geometry.medium_length;
}

namespace {

SensitivityReport build_report(const AtomSpecies& atom, double lambda_p,
                               const RingGeometry& geometry, double a, double time,
                               AreaConvention convention) {
  ProbeControlFields fields;
  fields.lambda_p = lambda_p;
  const double v_rec = hbar * fields.k_p() / atom.mass;

  SensitivityReport r;
  r.a = a;
  r.time = time;
  r.area_convention = convention;
  r.area = interferometer_area(geometry, convention);

  FluxParams flux{r.area, geometry.cross_section, geometry.atom_density, v_rec, time, atom.mass};
  const Optimum opt = optimize_snr(a);
  r.s_opt = opt.s_opt;
  r.xi_opt = opt.xi_opt;
  r.g_max = opt.g_max;
  r.f = prefactor_f();
  r.omega_min = flux.rate_scale() / opt.g_max;
  r.omega_min_asymptotic = flux.rate_scale() * r.f * std::sqrt(a);
  const PhotonCount count = detector_photons(geometry.cross_section, geometry.atom_density, v_rec,
                                             time, opt.xi_opt, opt.s_opt, a);
  r.n_d = count.n_d;
  r.warnings = count.warnings;
  r.delta_phi_noise = 1.0 / std::sqrt(r.n_d);
  r.snr = snr(r.omega_min, flux, opt.s_opt, opt.xi_opt, a);

  r.assumptions = {
      {"mass", fmt(atom.mass), "kg", ""},
      {"lambda_p", fmt(lambda_p), "m", ""},
      {"v_rec", fmt(v_rec), "m/s", "hbar k_p / m"},
      {"loss_parameter_a", fmt(a), "1", "caller supplied"},
      {"detection_time", fmt(time), "s", "1 s gives rad s^-1 Hz^-1/2"},
      {"radius", fmt(geometry.radius), "m", ""},
      {"medium_length", fmt(geometry.medium_length), "m", "full ring"},
      {"cross_section", fmt(geometry.cross_section), "m^2", "1e-2 cm^2"},
      {"atom_density", fmt(geometry.atom_density), "1/m^3", "1e14 cm^-3"},
      {"area_convention", std::string(to_string(convention)),
       "", convention == AreaConvention::RingLength ? "A = R L_M" : "A = pi R^2"},
      {"area", fmt(r.area), "m^2", ""},
      {"operating_point", "s_opt, xi_opt from optimize_snr(a)", "", ""},
  };
  r.comparisons = {
      {"optical gyroscope state of the art", 2e-10, r.omega_min / 2e-10},
      {"matter-wave gyroscope state of the art", 6e-10, r.omega_min / 6e-10},
  };
  return r;
}

}  // namespace

SensitivityReport case_study(std::string_view name, const SpeciesPreset& species, double a,
                             double time, AreaConvention convention) {
  const GeometryPreset g = geometry_preset(name);
  SensitivityReport r = build_report(species.atom, species.lambda_p, g.geometry, a, time,
                                     convention);
  r.case_name = g.name;
  r.species = species.name;
  r.assumptions.insert(r.assumptions.begin(),
                       {{"case", g.name, "", g.provenance},
                        {"species", species.name, "", species.provenance}});
  return r;
}

SensitivityReport sensitivity_report(const AtomSpecies& atom, const ProbeControlFields& fields,
                                     const RingGeometry& geometry, double time,
                                     AreaConvention convention, std::string case_name,
                                     std::string species_name) {
  atom.validate();
  fields.validate();
  geometry.validate();
  const double v_rec = hbar * fields.k_p() / atom.mass;
  const double a = loss_parameter(atom.gamma13, geometry.medium_length, v_rec);
  SensitivityReport r = build_report(atom, fields.lambda_p, geometry, a, time, convention);
  r.case_name = std::move(case_name);
  r.species = std::move(species_name);
  r.assumptions.insert(r.assumptions.begin(), {"species", r.species, "", "config"});
  return r;
}

}  // namespace sagnac
