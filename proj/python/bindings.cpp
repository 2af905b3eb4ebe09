// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for the core simulator. Thin: every function below is a
// direct wrap of the C++ entry point, with numpy conversions for Eigen
// types and the exceptions mapped to Python ones.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "irslink/beamforming.hpp"
#include "irslink/channel.hpp"
#include "irslink/config.hpp"
#include "irslink/energy.hpp"
#include "irslink/impairments.hpp"
#include "irslink/spectral.hpp"
#include "irslink/sweep.hpp"
#include "irslink/validate.hpp"
#include "irslink/version.hpp"

namespace py = pybind11;
using namespace irslink;

namespace {

Intensity parse_intensity(const std::string& name) {
    if (name == "quick") return Intensity::Quick;
    if (name == "standard") return Intensity::Standard;
    if (name == "full") return Intensity::Full;
    throw std::invalid_argument("intensity must be quick, standard or full");
}

}  // namespace

PYBIND11_MODULE(_irslink, m) {
    m.doc() = "IRS-assisted MISO link simulator";
    m.attr("__version__") = version;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_RuntimeError);

    py::class_<Angles>(m, "Angles")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("azimuth"),
             py::arg("elevation"))
        .def_readwrite("azimuth", &Angles::azimuth)
        .def_readwrite("elevation", &Angles::elevation)
        .def("__repr__", [](const Angles& a) {
            return "Angles(azimuth=" + std::to_string(a.azimuth) +
                   ", elevation=" + std::to_string(a.elevation) + ")";
        });

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def_readwrite("ap_antennas", &SystemConfig::ap_antennas)
        .def_readwrite("irs_elements", &SystemConfig::irs_elements)
        .def_readwrite("gain_ap_irs", &SystemConfig::gain_ap_irs)
        .def_readwrite("gain_irs_user", &SystemConfig::gain_irs_user)
        .def_readwrite("aoa_irs", &SystemConfig::aoa_irs)
        .def_readwrite("aod_ap", &SystemConfig::aod_ap)
        .def_readwrite("aod_irs", &SystemConfig::aod_irs)
        .def_readwrite("spacing_ratio", &SystemConfig::spacing_ratio)
        .def_readwrite("noise_power", &SystemConfig::noise_power)
        .def("validate", &SystemConfig::validate);

    py::class_<ImpairmentConfig>(m, "ImpairmentConfig")
        .def(py::init<>())
        .def_static("none", &ImpairmentConfig::none)
        .def_readwrite("rf_attenuation", &ImpairmentConfig::rf_attenuation)
        .def_readwrite("rf_phase_bound", &ImpairmentConfig::rf_phase_bound)
        .def_readwrite("distortion_power", &ImpairmentConfig::distortion_power)
        .def_readwrite("irs_phase_bound", &ImpairmentConfig::irs_phase_bound)
        .def("is_ideal", &ImpairmentConfig::is_ideal)
        .def("validate", &ImpairmentConfig::validate);

    py::class_<PowerConfig>(m, "PowerConfig")
        .def(py::init<>())
        .def_readwrite("amplifier_inefficiency",
                       &PowerConfig::amplifier_inefficiency)
        .def_readwrite("static_power", &PowerConfig::static_power)
        .def_readwrite("static_power_ideal", &PowerConfig::static_power_ideal)
        .def_readwrite("bandwidth", &PowerConfig::bandwidth)
        .def("validate", &PowerConfig::validate);

    py::class_<PhaseRealization>(m, "PhaseRealization")
        .def(py::init<>())
        .def_readwrite("rf_phase", &PhaseRealization::rf_phase)
        .def_readwrite("irs_phase_error", &PhaseRealization::irs_phase_error);

    py::class_<BeamformingSolution>(m, "BeamformingSolution")
        .def(py::init<>())
        .def_readwrite("weights", &BeamformingSolution::weights)
        .def_readwrite("irs_phases", &BeamformingSolution::irs_phases);

    py::class_<LosChannels>(m, "LosChannels")
        .def_readwrite("ap_to_irs", &LosChannels::ap_to_irs)
        .def_readwrite("irs_to_user", &LosChannels::irs_to_user);

    py::class_<MonteCarloResult>(m, "MonteCarloResult")
        .def_readonly("mean", &MonteCarloResult::mean)
        .def_readonly("std_error", &MonteCarloResult::std_error)
        .def_readonly("trials", &MonteCarloResult::trials)
        .def("__repr__", [](const MonteCarloResult& r) {
            return "MonteCarloResult(mean=" + std::to_string(r.mean) +
                   ", std_error=" + std::to_string(r.std_error) +
                   ", trials=" + std::to_string(r.trials) + ")";
        });

    py::class_<OptimalPowerResult>(m, "OptimalPowerResult")
        .def_readonly("power", &OptimalPowerResult::power)
        .def_readonly("energy_efficiency",
                      &OptimalPowerResult::energy_efficiency)
        .def_readonly("rate_constant", &OptimalPowerResult::rate_constant)
        .def_readonly("stationarity_residual",
                      &OptimalPowerResult::stationarity_residual);

    py::class_<ClosedFormCandidate>(m, "ClosedFormCandidate")
        .def_readonly("power", &ClosedFormCandidate::power)
        .def_readonly("residual", &ClosedFormCandidate::residual);

    py::enum_<Scenario>(m, "Scenario")
        .value("nonideal_mc", Scenario::NonidealMc)
        .value("nonideal_closed", Scenario::NonidealClosed)
        .value("ideal", Scenario::Ideal)
        .value("high_snr", Scenario::HighSnr)
        .value("upper_bound", Scenario::UpperBound);

    py::enum_<Metric>(m, "Metric")
        .value("se", Metric::SpectralEfficiency)
        .value("ee", Metric::EnergyEfficiency);

    py::enum_<SweepVariable>(m, "SweepVariable")
        .value("transmit_power_db", SweepVariable::TransmitPowerDb)
        .value("transmit_power", SweepVariable::TransmitPower)
        .value("irs_elements", SweepVariable::IrsElements);

    py::enum_<DbReference>(m, "DbReference")
        .value("noise", DbReference::Noise)
        .value("distortion", DbReference::Distortion);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("variable", &SweepSpec::variable)
        .def_readwrite("start", &SweepSpec::start)
        .def_readwrite("stop", &SweepSpec::stop)
        .def_readwrite("steps", &SweepSpec::steps)
        .def_readwrite("db_reference", &SweepSpec::db_reference)
        .def_readwrite("scenarios", &SweepSpec::scenarios)
        .def_readwrite("metric", &SweepSpec::metric)
        .def_readwrite("transmit_power", &SweepSpec::transmit_power);

    py::class_<LoadedConfig>(m, "LoadedConfig")
        .def(py::init<>())
        .def_readwrite("system", &LoadedConfig::system)
        .def_readwrite("impairments", &LoadedConfig::impairments)
        .def_readwrite("power", &LoadedConfig::power)
        .def_readwrite("sweep", &LoadedConfig::sweep)
        .def_readwrite("warnings", &LoadedConfig::warnings)
        .def_readwrite("overridden_keys", &LoadedConfig::overridden_keys);

    py::class_<SweepOptions>(m, "SweepOptions")
        .def(py::init<>())
        .def_readwrite("seed", &SweepOptions::seed)
        .def_readwrite("trials", &SweepOptions::trials)
        .def_readwrite("threads", &SweepOptions::threads);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("sweep_value", &SweepRow::sweep_value)
        .def_readonly("scenario", &SweepRow::scenario)
        .def_readonly("metric", &SweepRow::metric)
        .def_readonly("value", &SweepRow::value)
        .def_readonly("has_mc_stats", &SweepRow::has_mc_stats)
        .def_readonly("std_error", &SweepRow::std_error)
        .def_readonly("trials", &SweepRow::trials);

    m.def("array_response", &array_response, py::arg("count"),
          py::arg("direction"), py::arg("spacing_ratio"));
    m.def("build_channels", &build_channels, py::arg("config"));

    m.def("sinc", &sinc, py::arg("x"));
    m.def("sample_phases", &sample_phases, py::arg("impairments"),
          py::arg("ap_antennas"), py::arg("irs_elements"), py::arg("seed"));
    m.def("rf_distortion_matrix", &rf_distortion_matrix,
          py::arg("impairments"), py::arg("phases"));

    m.def("optimal_irs_phases", &optimal_irs_phases, py::arg("config"));
    m.def("mrt_beamformer", &mrt_beamformer, py::arg("config"),
          py::arg("irs_phases"));
    m.def("design_beamforming", &design_beamforming, py::arg("config"));

    m.def("snr_exact", &snr_exact, py::arg("config"), py::arg("impairments"),
          py::arg("phases"), py::arg("beamforming"), py::arg("power"));
    m.def("snr_reduced", &snr_reduced, py::arg("config"),
          py::arg("impairments"), py::arg("phases"), py::arg("power"));
    m.def("se_of_snr", &se_of_snr, py::arg("snr"));
    m.def("se_asymptotic", &se_asymptotic, py::arg("config"),
          py::arg("impairments"), py::arg("power"));
    m.def("se_ideal", &se_ideal, py::arg("config"), py::arg("power"));
    m.def("se_high_snr", &se_high_snr, py::arg("impairments"),
          py::arg("power"));
    m.def("se_upper_bound", &se_upper_bound, py::arg("impairments"),
          py::arg("power"));
    m.def("monte_carlo_se", &monte_carlo_se, py::arg("config"),
          py::arg("impairments"), py::arg("power"), py::arg("trials"),
          py::arg("seed"), py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());

    m.def("total_power", &total_power, py::arg("power_config"),
          py::arg("transmit_power"));
    m.def("energy_efficiency", &energy_efficiency, py::arg("se"),
          py::arg("power_config"), py::arg("transmit_power"));
    m.def("lambert_w0", &lambert_w0, py::arg("x"));
    m.def("hardware_rate_constant", &hardware_rate_constant,
          py::arg("impairments"));
    m.def("ideal_rate_constant", &ideal_rate_constant, py::arg("config"));
    m.def("stationarity_residual", &stationarity_residual, py::arg("power"),
          py::arg("rate_constant"), py::arg("amplifier_inefficiency"),
          py::arg("static_power"));
    m.def("closed_form_candidates", &closed_form_candidates,
          py::arg("rate_constant"), py::arg("amplifier_inefficiency"),
          py::arg("static_power"));
    m.def("optimal_power", &optimal_power, py::arg("impairments"),
          py::arg("power_config"));
    m.def("optimal_power_ideal", &optimal_power_ideal, py::arg("config"),
          py::arg("power_config"));

    m.def("parse_config", &parse_config, py::arg("text"),
          py::arg("origin") = "<string>");
    m.def("load_config", &load_config, py::arg("path"));
    m.def("sweep_points", &sweep_points, py::arg("spec"));
    m.def("run_sweep", &run_sweep, py::arg("config"), py::arg("options"),
          py::call_guard<py::gil_scoped_release>());
    m.def("render_csv", &render_csv, py::arg("rows"));
    m.def("render_gnuplot", &render_gnuplot, py::arg("csv_filename"),
          py::arg("config"));
    m.def("make_manifest", &make_manifest, py::arg("config"),
          py::arg("options"), py::arg("csv_filename"));
    m.def("from_manifest", &from_manifest, py::arg("manifest_text"));

    m.def(
        "run_validation",
        [](std::uint64_t seed, const std::string& intensity) {
            ValidateOptions opt;
            opt.seed = seed;
            opt.intensity = parse_intensity(intensity);
            ValidationReport report = run_validation(opt);
            return py::make_tuple(report.all_passed,
                                  render_report(report, opt));
        },
        py::arg("seed") = 1, py::arg("intensity") = "standard",
        "Run the self-validation suites; returns (passed, report_text).");
}
