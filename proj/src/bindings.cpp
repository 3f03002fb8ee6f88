#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ionphase/pipeline.hpp"

namespace py = pybind11;
using namespace ionphase;

PYBIND11_MODULE(_ionphase, m) {
    m.doc() = "Single-ion phase shift toolkit: cross sections, coupling "
              "budgets and heterodyne Monte Carlo";

    py::register_exception<singular_point_error>(m, "SingularPointError",
                                                 PyExc_ValueError);
    py::register_exception<no_cooling_error>(m, "NoCoolingError",
                                             PyExc_ValueError);
    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<insufficient_data_error>(m, "InsufficientDataError",
                                                    PyExc_ValueError);

    py::class_<Detuning>(m, "Detuning")
        .def(py::init([](double rad_per_s) { return Detuning{rad_per_s}; }),
             py::arg("rad_per_s"))
        .def_static("from_linewidths", &Detuning::from_linewidths,
                    py::arg("linewidths"), py::arg("gamma"))
        .def_readwrite("rad_per_s", &Detuning::rad_per_s);

    py::class_<Transition>(m, "Transition")
        .def(py::init())
        .def_readwrite("wavelength", &Transition::wavelength)
        .def_readwrite("linewidth", &Transition::linewidth)
        .def_readwrite("j_lower_x2", &Transition::j_lower_x2)
        .def_readwrite("j_upper_x2", &Transition::j_upper_x2)
        .def_readwrite("mass", &Transition::mass);

    py::class_<ComplexResponse>(m, "ComplexResponse")
        .def_readonly("re", &ComplexResponse::re)
        .def_readonly("im", &ComplexResponse::im);

    py::enum_<PhaseModel>(m, "PhaseModel")
        .value("two_level", PhaseModel::two_level)
        .value("j_equal", PhaseModel::j_equal);

    py::class_<PhaseExtremum>(m, "PhaseExtremum")
        .def_readonly("detuning", &PhaseExtremum::detuning)
        .def_readonly("phase", &PhaseExtremum::phase);

    m.def("resonant_cross_section_two_level",
          &resonant_cross_section_two_level, py::arg("wavelength"));
    m.def("resonant_cross_section", &resonant_cross_section,
          py::arg("transition"));
    m.def("scattering_rate", &scattering_rate, py::arg("sigma"),
          py::arg("mode_area"), py::arg("incident_rate"));
    m.def("lorentzian_kernel", &lorentzian_kernel, py::arg("delta"),
          py::arg("gamma"));
    m.def("phase_two_level", &phase_two_level, py::arg("g"), py::arg("delta"),
          py::arg("gamma"));
    m.def("phase_from_mode_area", &phase_from_mode_area, py::arg("sigma"),
          py::arg("mode_area"), py::arg("delta"), py::arg("gamma"));
    m.def("phase_j_equal", &phase_j_equal, py::arg("g"), py::arg("delta"),
          py::arg("gamma"));
    m.def("max_phase_over_detuning", &max_phase_over_detuning, py::arg("g"),
          py::arg("model"), py::arg("gamma"));
    m.def("wrap_phase", &wrap_phase, py::arg("angle"));

    m.def("coupling_from_mode_area", &coupling_from_mode_area,
          py::arg("sigma"), py::arg("mode_area"));
    m.def("coupling_from_overlap", &coupling_from_overlap, py::arg("overlap"),
          py::arg("solid_angle_weight"));
    m.def("scattering_ratio", &scattering_ratio, py::arg("g"));
    m.def(
        "doppler_temperature",
        [](Detuning delta, double gamma) {
            return doppler_temperature(delta, gamma);
        },
        py::arg("delta"), py::arg("gamma"));
    m.def(
        "thermal_extent",
        [](double temperature, double mass, double trap_frequency) {
            return thermal_extent(temperature, mass, trap_frequency);
        },
        py::arg("temperature"), py::arg("mass"), py::arg("trap_frequency"));
    m.def("motion_factor", &motion_factor, py::arg("extents"),
          py::arg("focal_waists"));
    m.def("motion_averaged_coupling", &motion_averaged_coupling,
          py::arg("g_geometry"), py::arg("extents"), py::arg("focal_waists"));
    m.def("saturation_scaled_coupling", &saturation_scaled_coupling,
          py::arg("g"), py::arg("saturation"), py::arg("delta"),
          py::arg("gamma"));

    py::class_<HeterodyneConfig>(m, "HeterodyneConfig")
        .def(py::init())
        .def_readwrite("beat_frequency", &HeterodyneConfig::beat_frequency)
        .def_readwrite("trigger_frequency",
                       &HeterodyneConfig::trigger_frequency)
        .def_readwrite("bin_width", &HeterodyneConfig::bin_width)
        .def_readwrite("duration", &HeterodyneConfig::duration)
        .def_readwrite("mean_rate", &HeterodyneConfig::mean_rate)
        .def_readwrite("visibility", &HeterodyneConfig::visibility)
        .def_readwrite("instrumental_phase",
                       &HeterodyneConfig::instrumental_phase)
        .def_readwrite("background_rate", &HeterodyneConfig::background_rate)
        .def("validate", &HeterodyneConfig::validate)
        .def("bin_count", &HeterodyneConfig::bin_count);

    py::class_<DetectionRecord>(m, "DetectionRecord")
        .def_readonly("arrival_times", &DetectionRecord::arrival_times);

    py::class_<TdcHistogram>(m, "TdcHistogram")
        .def_readonly("bin_edges", &TdcHistogram::bin_edges)
        .def_readonly("counts", &TdcHistogram::counts)
        .def_readonly("total", &TdcHistogram::total);

    m.def("beat_rate", &beat_rate, py::arg("t"), py::arg("config"),
          py::arg("phase"));
    m.def("sample_detections", &sample_detections, py::arg("config"),
          py::arg("phase"), py::arg("seed"));
    m.def("fold_histogram", &fold_histogram, py::arg("record"),
          py::arg("config"));

    py::class_<CosineFit>(m, "CosineFit")
        .def_readonly("amplitude", &CosineFit::amplitude)
        .def_readonly("offset", &CosineFit::offset)
        .def_readonly("phase", &CosineFit::phase)
        .def_readonly("phase_stderr", &CosineFit::phase_stderr)
        .def_readonly("visibility_estimate", &CosineFit::visibility_estimate)
        .def_readonly("residual_chi2", &CosineFit::residual_chi2)
        .def_readonly("flags", &CosineFit::flags)
        .def("to_record", &CosineFit::to_record);

    py::class_<PhaseMeasurement>(m, "PhaseMeasurement")
        .def_readonly("bright_phase", &PhaseMeasurement::bright_phase)
        .def_readonly("dark_phase", &PhaseMeasurement::dark_phase)
        .def_readonly("differential", &PhaseMeasurement::differential)
        .def_readonly("stderr", &PhaseMeasurement::stderr_)
        .def_readonly("flags", &PhaseMeasurement::flags);

    m.def("fit_cosine", &fit_cosine, py::arg("hist"),
          py::arg("beat_frequency"));
    m.def("differential_phase", &differential_phase, py::arg("bright"),
          py::arg("dark"));
    m.def("sideband_reference_correction", &sideband_reference_correction,
          py::arg("g"), py::arg("delta_carrier"), py::arg("beat_frequency"),
          py::arg("gamma"));

    py::class_<Corrections>(m, "Corrections")
        .def(py::init())
        .def_readwrite("motion", &Corrections::motion)
        .def_readwrite("saturation", &Corrections::saturation)
        .def_readwrite("sideband_reference", &Corrections::sideband_reference);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init(&ExperimentConfig::defaults))
        .def_static("defaults", &ExperimentConfig::defaults)
        .def_readwrite("transition", &ExperimentConfig::transition)
        .def_readwrite("coupling_central", &ExperimentConfig::coupling_central)
        .def_readwrite("coupling_uncertainty",
                       &ExperimentConfig::coupling_uncertainty)
        .def_readwrite("detuning_grid_gamma",
                       &ExperimentConfig::detuning_grid_gamma)
        .def_readwrite("heterodyne", &ExperimentConfig::heterodyne)
        .def_readwrite("dark_rate", &ExperimentConfig::dark_rate)
        .def_readwrite("temperature_excess",
                       &ExperimentConfig::temperature_excess)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("corrections", &ExperimentConfig::corrections)
        .def("validate", &ExperimentConfig::validate);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("detuning_gamma", &SweepRow::detuning_gamma)
        .def_readonly("detuning_rad_s", &SweepRow::detuning_rad_s)
        .def_readonly("theory_rad", &SweepRow::theory_rad)
        .def_readonly("theory_lo_rad", &SweepRow::theory_lo_rad)
        .def_readonly("theory_hi_rad", &SweepRow::theory_hi_rad)
        .def_readonly("sim_rad", &SweepRow::sim_rad)
        .def_readonly("sim_err_rad", &SweepRow::sim_err_rad)
        .def_readonly("flags", &SweepRow::flags)
        .def("theory_deg", &SweepRow::theory_deg);

    m.def("parse_config", &parse_config, py::arg("path"));
    m.def("parse_config_text", &parse_config_text, py::arg("text"),
          py::arg("origin") = "<string>");
    m.def("expand_detuning_grid", &expand_detuning_grid, py::arg("spec"));
    m.def("theory_curve", &theory_curve, py::arg("config"));
    m.def("simulate_sweep", &simulate_sweep, py::arg("config"),
          py::arg("threads") = 1);
    m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("index"),
          py::arg("tag"));
    m.def("format_csv", &format_csv, py::arg("rows"));
    m.def("emit_csv", &emit_csv, py::arg("rows"), py::arg("path"));
}
