// Python bindings for the simulator core. Exposes the parameter structs, the
// linearised model builder, the filtered-output covariance integrator and the
// entanglement / teleportation metrics.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <eomsim/config.hpp>
#include <eomsim/dynamics.hpp>
#include <eomsim/metrics.hpp>
#include <eomsim/oracles.hpp>
#include <eomsim/params.hpp>
#include <eomsim/spectra.hpp>
#include <eomsim/sweep.hpp>

namespace py = pybind11;
using namespace eomsim;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stationary covariances and teleportation metrics for a "
              "microwave-optical electro-optomechanical transducer";

    py::class_<PhysicalParams>(m, "PhysicalParams")
        .def(py::init<>())
        .def_static("defaults", &PhysicalParams::defaults)
        .def_readwrite("omega_m", &PhysicalParams::omega_m)
        .def_readwrite("quality_factor", &PhysicalParams::quality_factor)
        .def_readwrite("mass", &PhysicalParams::mass)
        .def_readwrite("bath_temperature", &PhysicalParams::bath_temperature)
        .def_readwrite("omega_w", &PhysicalParams::omega_w)
        .def_readwrite("kappa_w", &PhysicalParams::kappa_w)
        .def_readwrite("power_w", &PhysicalParams::power_w)
        .def_readwrite("drive_omega_w", &PhysicalParams::drive_omega_w)
        .def_readwrite("mu", &PhysicalParams::mu)
        .def_readwrite("gap", &PhysicalParams::gap)
        .def_readwrite("lambda_c", &PhysicalParams::lambda_c)
        .def_readwrite("kappa_c", &PhysicalParams::kappa_c)
        .def_readwrite("power_c", &PhysicalParams::power_c)
        .def_readwrite("cavity_length", &PhysicalParams::cavity_length)
        .def_readwrite("delta_c", &PhysicalParams::delta_c)
        .def_readwrite("delta_w", &PhysicalParams::delta_w)
        .def("validate", &PhysicalParams::validate);

    py::class_<DerivedParams>(m, "DerivedParams")
        .def_readonly("g0c", &DerivedParams::g0c)
        .def_readonly("g0w", &DerivedParams::g0w)
        .def_readonly("drive_amp_c", &DerivedParams::drive_amp_c)
        .def_readonly("drive_amp_w", &DerivedParams::drive_amp_w)
        .def_readonly("gc", &DerivedParams::gc)
        .def_readonly("gw", &DerivedParams::gw)
        .def_readonly("nbar_m", &DerivedParams::nbar_m)
        .def_readonly("n_w", &DerivedParams::n_w)
        .def_readonly("n_c", &DerivedParams::n_c)
        .def_readonly("gamma_m", &DerivedParams::gamma_m);

    m.def("thermal_occupancy", &thermal_occupancy, py::arg("omega"), py::arg("temperature"));
    m.def("derive_couplings", &derive_couplings, py::arg("params"));

    py::enum_<DetuningConvention>(m, "DetuningConvention")
        .value("GivenEffective", DetuningConvention::GivenEffective)
        .value("GivenBare", DetuningConvention::GivenBare);

    py::class_<FixedPoint>(m, "FixedPoint")
        .def_readonly("q_s", &FixedPoint::q_s)
        .def_readonly("alpha_s", &FixedPoint::alpha_s)
        .def_readonly("beta_s", &FixedPoint::beta_s)
        .def_readonly("delta_c_eff", &FixedPoint::delta_c_eff)
        .def_readonly("delta_w_eff", &FixedPoint::delta_w_eff);

    m.def("fixed_point", &fixed_point, py::arg("params"), py::arg("derived"),
          py::arg("mode") = DetuningConvention::GivenEffective);

    py::class_<StateSpaceModel>(m, "StateSpaceModel")
        .def_readonly("drift", &StateSpaceModel::drift)
        .def_readonly("diffusion", &StateSpaceModel::diffusion)
        .def_readonly("omega_m", &StateSpaceModel::omega_m)
        .def_readonly("stable", &StateSpaceModel::stable)
        .def_readonly("max_real_eig", &StateSpaceModel::max_real_eig);

    py::class_<Stability>(m, "Stability")
        .def_readonly("stable", &Stability::stable)
        .def_readonly("max_real_eig", &Stability::max_real_eig);

    m.def("build_model", &build_model, py::arg("derived"), py::arg("params"));
    m.def("is_stable", &is_stable, py::arg("drift"));
    m.def("lyapunov_cm", &lyapunov_cm, py::arg("model"));

    py::class_<FilterSpec>(m, "FilterSpec")
        .def(py::init<>())
        .def_static("from_normalized", &FilterSpec::from_normalized, py::arg("epsilon"),
                    py::arg("omega_c_norm"), py::arg("omega_w_norm"), py::arg("omega_m"))
        .def_readwrite("tau_c", &FilterSpec::tau_c)
        .def_readwrite("tau_w", &FilterSpec::tau_w)
        .def_readwrite("omega_center_c", &FilterSpec::omega_center_c)
        .def_readwrite("omega_center_w", &FilterSpec::omega_center_w)
        .def("validate", &FilterSpec::validate);

    py::class_<CovarianceSet>(m, "CovarianceSet")
        .def_readonly("v_out", &CovarianceSet::v_out)
        .def_readonly("v_reduced", &CovarianceSet::v_reduced)
        .def_readonly("B", &CovarianceSet::B)
        .def_readonly("Bp", &CovarianceSet::Bp)
        .def_readonly("C", &CovarianceSet::C)
        .def_readonly("quad_error", &CovarianceSet::quad_error);

    m.def("output_cm", &output_cm, py::arg("model"), py::arg("filters"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<LogNegativity>(m, "LogNegativity")
        .def_readonly("e_n", &LogNegativity::e_n)
        .def_readonly("eta_minus", &LogNegativity::eta_minus);

    m.def("log_negativity", &log_negativity, py::arg("v_reduced"), py::arg("B"), py::arg("Bp"),
          py::arg("C"));
    m.def("gamma_matrix", &gamma_matrix, py::arg("B"), py::arg("Bp"), py::arg("C"));
    m.def("fidelity_fock1", &fidelity_fock1, py::arg("gamma"));
    m.def("fidelity_superposition", &fidelity_superposition, py::arg("gamma"));
    m.def("fidelity_numeric", &fidelity_numeric, py::arg("gamma"), py::arg("input_charfn"));
    m.def("charfn_vacuum", &charfn_vacuum, py::arg("eta"));
    m.def("charfn_fock1", &charfn_fock1, py::arg("eta"));
    m.def("charfn_superposition", &charfn_superposition, py::arg("eta"));
    m.def("no_cloning_pass", &no_cloning_pass, py::arg("fidelity"));

    py::class_<TeleportationReport>(m, "TeleportationReport")
        .def_readonly("e_n", &TeleportationReport::e_n)
        .def_readonly("eta_minus", &TeleportationReport::eta_minus)
        .def_readonly("gamma", &TeleportationReport::gamma)
        .def_readonly("fidelity_fock", &TeleportationReport::fidelity_fock)
        .def_readonly("fidelity_superposition", &TeleportationReport::fidelity_superposition)
        .def_readonly("beats_no_cloning_fock", &TeleportationReport::beats_no_cloning_fock)
        .def_readonly("beats_no_cloning_superposition",
                      &TeleportationReport::beats_no_cloning_superposition);

    m.def("teleportation_report", &teleportation_report, py::arg("cm"));

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_static("defaults", &SimConfig::defaults)
        .def_readwrite("physical", &SimConfig::physical)
        .def_readwrite("filters", &SimConfig::filters)
        .def("set", &SimConfig::set, py::arg("key"), py::arg("value"))
        .def("get", &SimConfig::get, py::arg("key"))
        .def("validate", &SimConfig::validate);

    m.def("load_config", &load_config, py::arg("path"));

    py::class_<OracleReport>(m, "OracleReport")
        .def_readonly("name", &OracleReport::name)
        .def_readonly("max_abs_err", &OracleReport::max_abs_err)
        .def_readonly("max_rel_err", &OracleReport::max_rel_err)
        .def_readonly("passed", &OracleReport::passed)
        .def_readonly("budget", &OracleReport::budget);

    m.def("run_all_oracles", &run_all_oracles, py::arg("budget"), py::arg("seed"),
          py::arg("tol_override") = std::nullopt,
          py::call_guard<py::gil_scoped_release>());
}
