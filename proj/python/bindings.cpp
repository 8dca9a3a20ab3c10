#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sagnac/commands.hpp"
#include "sagnac/config.hpp"
#include "sagnac/errors.hpp"
#include "sagnac/lambda_bloch.hpp"
#include "sagnac/polariton.hpp"
#include "sagnac/propagation.hpp"
#include "sagnac/ring_modes.hpp"
#include "sagnac/sensitivity.hpp"
#include "sagnac/units.hpp"

namespace py = pybind11;
using namespace sagnac;

namespace {

CommandOutput dispatch(const std::string& name, const RunConfig& cfg) {
  if (name == "steady-state") return cmd_steady_state(cfg);
  if (name == "propagate") return cmd_propagate(cfg);
  if (name == "phase") return cmd_phase(cfg);
  if (name == "snr-sweep") return cmd_snr_sweep(cfg);
  if (name == "optimize") return cmd_optimize(cfg);
  if (name == "omega-min") return cmd_omega_min(cfg);
  throw InvalidParameter("unknown command '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Slow-light / matter-wave hybrid Sagnac gyroscope model";
  m.attr("__version__") = SAGNAC_VERSION;

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidParameter>(m, "InvalidParameter", base.ptr());
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<DegenerateEit>(m, "DegenerateEit", numerical.ptr());
  py::register_exception<DegenerateSteadyState>(m, "DegenerateSteadyState", numerical.ptr());
  py::register_exception<IntegrationError>(m, "IntegrationError", numerical.ptr());
  py::register_exception<BoundaryHit>(m, "BoundaryHit", numerical.ptr());

  py::class_<AtomSpecies>(m, "AtomSpecies")
      .def(py::init<>())
      .def_readwrite("mass", &AtomSpecies::mass)
      .def_readwrite("dipole_p", &AtomSpecies::dipole_p)
      .def_readwrite("gamma1", &AtomSpecies::gamma1)
      .def_readwrite("gamma3", &AtomSpecies::gamma3)
      .def_readwrite("gamma13", &AtomSpecies::gamma13)
      .def_property_readonly("gamma2", &AtomSpecies::gamma2);

  py::class_<ProbeControlFields>(m, "ProbeControlFields")
      .def(py::init<>())
      .def_readwrite("lambda_p", &ProbeControlFields::lambda_p)
      .def_readwrite("k_c_parallel", &ProbeControlFields::k_c_parallel)
      .def_readwrite("rabi_p0", &ProbeControlFields::rabi_p0)
      .def_readwrite("rabi_c", &ProbeControlFields::rabi_c)
      .def_readwrite("delta2", &ProbeControlFields::delta2)
      .def_readwrite("delta3", &ProbeControlFields::delta3)
      .def_property_readonly("k_p", &ProbeControlFields::k_p)
      .def_property_readonly("omega_p", &ProbeControlFields::omega_p);

  py::class_<RingGeometry>(m, "RingGeometry")
      .def(py::init<>())
      .def_readwrite("radius", &RingGeometry::radius)
      .def_readwrite("medium_length", &RingGeometry::medium_length)
      .def_readwrite("cross_section", &RingGeometry::cross_section)
      .def_readwrite("atom_density", &RingGeometry::atom_density)
      .def_readwrite("rotation_rate", &RingGeometry::rotation_rate);

  py::class_<SpeciesPreset>(m, "SpeciesPreset")
      .def_readonly("name", &SpeciesPreset::name)
      .def_readonly("atom", &SpeciesPreset::atom)
      .def_readonly("lambda_p", &SpeciesPreset::lambda_p)
      .def_readonly("provenance", &SpeciesPreset::provenance);
  m.def("species_preset", [](const std::string& n) { return species_preset(n); });

  m.def("v_rec", [](const AtomSpecies& a, const ProbeControlFields& f) {
    return derive_recoil(a, f).v_rec;
  });
  m.def("rest_energy_ratio", &rest_energy_ratio);
  m.def("gamma_from_dipole", &gamma_from_dipole);
  m.def("dipole_from_gamma", &dipole_from_gamma);

  m.def("mode_energy", &mode_energy, py::arg("n"), py::arg("rotation_rate"), py::arg("radius"),
        py::arg("mass"));
  m.def("n_min", &n_min);
  m.def("ground_mode", &ground_mode);
  m.def("thermal_phase", [](double omega, double r, double mass, double t) {
    return thermal_phase(omega, r, mass, t).phase;
  });

  py::class_<BlochParams>(m, "BlochParams")
      .def(py::init<>())
      .def_readwrite("gamma1", &BlochParams::gamma1)
      .def_readwrite("gamma3", &BlochParams::gamma3)
      .def_readwrite("gamma13", &BlochParams::gamma13)
      .def_readwrite("rabi_p", &BlochParams::rabi_p)
      .def_readwrite("rabi_c", &BlochParams::rabi_c)
      .def_readwrite("delta2", &BlochParams::delta2)
      .def_readwrite("delta3", &BlochParams::delta3)
      .def_readwrite("rotation_rate", &BlochParams::rotation_rate)
      .def_readwrite("radius", &BlochParams::radius)
      .def_readwrite("k_p", &BlochParams::k_p);
  m.def("generator", [](const BlochParams& p) { return Eigen::MatrixXcd(build_generator(p).M); });
  m.def("steady_state", [](const BlochParams& p, double norm) {
    return Eigen::MatrixXcd(steady_state(build_generator(p), norm).matrix());
  }, py::arg("params"), py::arg("norm") = 1.0);

  m.def("xi_from_medium", [](double g2rho, double rabi_c, double v_rec) {
    return xi_from_medium(g2rho, rabi_c, v_rec).value;
  });
  m.def("group_velocity", &group_velocity);

  m.def("snr_shape", &snr_shape, py::arg("s"), py::arg("xi"), py::arg("a"));
  py::class_<Optimum>(m, "Optimum")
      .def_readonly("a", &Optimum::a)
      .def_readonly("s_opt", &Optimum::s_opt)
      .def_readonly("xi_opt", &Optimum::xi_opt)
      .def_readonly("g_max", &Optimum::g_max)
      .def_readonly("f_estimate", &Optimum::f_estimate);
  m.def("optimize_snr", &optimize_snr, py::arg("a"));
  m.def("prefactor_f", &prefactor_f);

  m.def("run_command", [](const std::string& name, const std::string& config_json) {
    const RunConfig cfg = load_config(nlohmann::json::parse(config_json));
    const CommandOutput out = dispatch(name, cfg);
    py::dict result;
    result["envelope"] = out.envelope.dump();
    if (out.table) {
      result["header"] = out.table->header;
      result["rows"] = out.table->rows;
    }
    return result;
  }, py::arg("command"), py::arg("config_json") = "{}",
     "Run a tool command; returns the JSON envelope text and any table.");
}
