#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ddmag/config.hpp"
#include "ddmag/csv.hpp"
#include "ddmag/errors.hpp"
#include "ddmag/experiments.hpp"
#include "ddmag/field.hpp"
#include "ddmag/metrics.hpp"
#include "ddmag/noise.hpp"
#include "ddmag/polarization.hpp"
#include "ddmag/propagation.hpp"

namespace py = pybind11;
using namespace ddmag;

namespace {

void bind_polarization(py::module_& m) {
    py::enum_<Axis>(m, "Axis").value("X", Axis::X).value("Y", Axis::Y).value("Z", Axis::Z);

    py::class_<AxisRotation>(m, "AxisRotation")
        .def(py::init<Axis, double>(), py::arg("axis"), py::arg("angle"))
        .def_readwrite("axis", &AxisRotation::axis)
        .def_readwrite("angle", &AxisRotation::angle);

    py::class_<PolarizationState>(m, "PolarizationState")
        .def(py::init<>())
        .def_static("from_bloch", py::overload_cast<double, double, double>(&PolarizationState::from_bloch),
                    py::arg("x"), py::arg("y"), py::arg("z"))
        .def_property_readonly("bloch", &PolarizationState::bloch)
        .def_property_readonly("x", &PolarizationState::x)
        .def_property_readonly("y", &PolarizationState::y)
        .def_property_readonly("z", &PolarizationState::z)
        .def("__repr__", [](const PolarizationState& s) {
            return "PolarizationState(" + format_number(s.x()) + ", " + format_number(s.y()) + ", " +
                   format_number(s.z()) + ")";
        });

    py::class_<PolarizationEnsemble>(m, "PolarizationEnsemble")
        .def(py::init<>())
        .def_property_readonly("count", &PolarizationEnsemble::count)
        .def_property_readonly("sum", &PolarizationEnsemble::sum)
        .def("mean", &PolarizationEnsemble::mean);

    m.def("apply_rotation", &apply_rotation, py::arg("state"), py::arg("rotation"));
    m.def("apply_pi_pulse_x", &apply_pi_pulse_x, py::arg("state"));
    m.def("azimuth", &azimuth, py::arg("state"));
    m.def("accumulate", &accumulate, py::arg("ensemble"), py::arg("state"));
    m.def("merge", &merge, py::arg("a"), py::arg("b"));
    m.def("fidelity", py::overload_cast<const PolarizationEnsemble&, const PolarizationState&>(&fidelity),
          py::arg("ensemble"), py::arg("desired"));
    m.def("fidelity", py::overload_cast<const PolarizationState&, const PolarizationState&>(&fidelity),
          py::arg("actual"), py::arg("desired"));
}

void bind_physics(py::module_& m) {
    m.attr("SPEED_OF_LIGHT") = kSpeedOfLight;

    py::class_<NoiseSpec>(m, "NoiseSpec")
        .def(py::init<>())
        .def_readwrite("coherence_length", &NoiseSpec::coherence_length)
        .def_readwrite("total_phase_std", &NoiseSpec::total_phase_std)
        .def_readwrite("wavelength", &NoiseSpec::wavelength)
        .def_readwrite("seed", &NoiseSpec::seed);

    py::class_<PhaseProfile>(m, "PhaseProfile")
        .def(py::init<>())
        .def_readwrite("segment_length", &PhaseProfile::segment_length)
        .def_readwrite("phases", &PhaseProfile::phases)
        .def("covered_length", &PhaseProfile::covered_length);

    m.def("sample_profile", &sample_profile, py::arg("spec"), py::arg("length"));

    py::class_<FieldSpec>(m, "FieldSpec")
        .def(py::init<>())
        .def_readwrite("amplitude", &FieldSpec::amplitude)
        .def_readwrite("detuning_fraction", &FieldSpec::detuning_fraction)
        .def_readwrite("phase_offset", &FieldSpec::phase_offset);

    py::class_<OpticsSpec>(m, "OpticsSpec")
        .def(py::init<>())
        .def_readwrite("verdet", &OpticsSpec::verdet)
        .def_readwrite("refractive_index", &OpticsSpec::refractive_index)
        .def_readwrite("waveplate_separation", &OpticsSpec::waveplate_separation);

    m.def("characteristic_frequency", &characteristic_frequency, py::arg("optics"));
    m.def("field_value", &field_value, py::arg("field"), py::arg("optics"), py::arg("time"));
    m.def("faraday_rotation_angle", &faraday_rotation_angle, py::arg("verdet"), py::arg("field"),
          py::arg("length"));

    py::class_<FiberSpec>(m, "FiberSpec")
        .def(py::init<>())
        .def_readwrite("length", &FiberSpec::length)
        .def_readwrite("optics", &FiberSpec::optics)
        .def_readwrite("placement_error_fraction", &FiberSpec::placement_error_fraction)
        .def_readwrite("dd_enabled", &FiberSpec::dd_enabled)
        .def_readwrite("integration_step", &FiberSpec::integration_step);

    py::class_<WaveplateLattice>(m, "WaveplateLattice")
        .def(py::init<>())
        .def_readwrite("positions", &WaveplateLattice::positions);

    m.def("build_lattice", &build_lattice, py::arg("fiber"), py::arg("seed"));

    py::class_<RealizationResult>(m, "RealizationResult")
        .def_readonly("final_state", &RealizationResult::final_state)
        .def_readonly("toggled_azimuth", &RealizationResult::toggled_azimuth)
        .def_readonly("pulses", &RealizationResult::pulses)
        .def_property_readonly("trajectory", [](const RealizationResult& r) {
            std::vector<std::pair<double, double>> out;
            out.reserve(r.trajectory.size());
            for (const TrajectoryPoint& p : r.trajectory) {
                out.emplace_back(p.position, p.toggled_azimuth);
            }
            return out;
        });

    m.def("propagate", &propagate, py::arg("fiber"), py::arg("field"), py::arg("profile"), py::arg("lattice"),
          py::arg("record_trajectory") = false, py::call_guard<py::gil_scoped_release>());

    py::class_<EnsembleResult>(m, "EnsembleResult")
        .def_readonly("ensemble", &EnsembleResult::ensemble)
        .def_readonly("mean_toggled_azimuth", &EnsembleResult::mean_toggled_azimuth)
        .def_readonly("toggled_azimuth_stderr", &EnsembleResult::toggled_azimuth_stderr)
        .def_readonly("desired_state", &EnsembleResult::desired_state)
        .def_readonly("desired_toggled_azimuth", &EnsembleResult::desired_toggled_azimuth)
        .def_readonly("fidelity", &EnsembleResult::fidelity)
        .def_readonly("fidelity_stderr", &EnsembleResult::fidelity_stderr);

    m.def("run_ensemble", &run_ensemble, py::arg("fiber"), py::arg("field"), py::arg("noise"),
          py::arg("realizations"), py::arg("master_seed"), py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>());

    m.def("signal_strength", [](double theta, double theta_max) { return signal_strength(theta, theta_max).ratio; },
          py::arg("theta"), py::arg("theta_max"));
    m.def("detuning_envelope", &detuning_envelope, py::arg("detuning_fraction"), py::arg("cycles"));
}

void bind_experiments(py::module_& m) {
    py::class_<SimulationConfig>(m, "SimulationConfig")
        .def(py::init<>())
        .def_readwrite("fiber", &SimulationConfig::fiber)
        .def_readwrite("field", &SimulationConfig::field)
        .def_readwrite("noise", &SimulationConfig::noise)
        .def_readwrite("auto_integration_step", &SimulationConfig::auto_integration_step)
        .def_readwrite("realizations", &SimulationConfig::realizations)
        .def_readwrite("master_seed", &SimulationConfig::master_seed)
        .def_readwrite("threads", &SimulationConfig::threads);

    py::class_<SweepResult>(m, "SweepResult")
        .def_property_readonly("name", &SweepResult::name)
        .def_property_readonly("labels",
                               [](const SweepResult& r) {
                                   std::vector<std::string> out;
                                   for (const Column& c : r.columns()) {
                                       out.push_back(c.label);
                                   }
                                   return out;
                               })
        .def_property_readonly("units",
                               [](const SweepResult& r) {
                                   std::vector<std::string> out;
                                   for (const Column& c : r.columns()) {
                                       out.push_back(c.unit);
                                   }
                                   return out;
                               })
        .def_property_readonly("rows", &SweepResult::rows)
        .def_property_readonly("metadata", &SweepResult::metadata)
        .def("column", &SweepResult::column, py::arg("label"))
        .def("to_csv", &to_csv)
        .def("write_csv", &write_csv, py::arg("path"));

    using Grid = std::vector<double>;
    m.def(
        "sweep_fidelity_vs_separation",
        [](const SimulationConfig& base, const Grid& separations, const Grid& fractions) {
            return sweep_fidelity_vs_separation(base, separations, fractions);
        },
        py::arg("base"), py::arg("separations"), py::arg("placement_fractions"),
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "sweep_signal_vs_detuning",
        [](const SimulationConfig& base, const Grid& detunings, int cycles) {
            return sweep_signal_vs_detuning(base, detunings, cycles);
        },
        py::arg("base"), py::arg("detunings"), py::arg("cycles") = kDefaultCycles,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "sweep_rotation_vs_length",
        [](const SimulationConfig& base, const Grid& lengths, const Grid& fractions) {
            return sweep_rotation_vs_length(base, lengths, fractions);
        },
        py::arg("base"), py::arg("lengths"), py::arg("placement_fractions"),
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "sweep_heatmap",
        [](const SimulationConfig& base, const Grid& fractions, const Grid& detunings) {
            return sweep_heatmap(base, fractions, detunings);
        },
        py::arg("base"), py::arg("placement_fractions"), py::arg("detunings"),
        py::call_guard<py::gil_scoped_release>());
    m.def("single_run", &single_run, py::arg("base"), py::call_guard<py::gil_scoped_release>());

    m.def(
        "run_config",
        [](const std::string& text, const KeyValues& overrides) {
            const RunConfig config = parse_config(text, overrides);
            py::gil_scoped_release release;
            return run_experiment(config);
        },
        py::arg("text") = "", py::arg("overrides") = KeyValues{},
        "Parse a key = value document plus overrides and run the selected experiment.");
    m.def("config_keys", &config_keys);
}

} // namespace

PYBIND11_MODULE(_ddmagsim, m) {
    m.doc() = "Monte Carlo simulation of a dynamically decoupled fiber-optic AC magnetometer.";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    bind_polarization(m);
    bind_physics(m);
    bind_experiments(m);
}
