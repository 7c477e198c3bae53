#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ionprobe/analysis.hpp"
#include "ionprobe/doppler.hpp"
#include "ionprobe/domain.hpp"
#include "ionprobe/numerics.hpp"
#include "ionprobe/quantum.hpp"
#include "ionprobe/spatial.hpp"

namespace py = pybind11;
using namespace ionprobe;

namespace {

spatial::PositionDensity density_from_args(const std::string& kind,
                                           double parameter) {
    if (kind == "point") return spatial::PointLike{};
    if (kind == "gaussian") return spatial::GaussianDensity{parameter};
    if (kind == "arcsine") return spatial::ArcsineDensity{parameter};
    throw std::invalid_argument("density kind must be point|gaussian|arcsine");
}

py::dict report_to_dict(const analysis::VisibilityReport& report) {
    py::dict paths;
    for (const auto& path : report.paths) {
        py::dict p;
        if (path.value) {
            p["value"] = *path.value;
        } else {
            p["error"] = path.error;
        }
        if (path.statistical) p["standard_error"] = path.standard_error;
        paths[path.name.c_str()] = std::move(p);
    }
    py::list deviations;
    for (const auto& dev : report.deviations) {
        py::dict d;
        d["a"] = dev.a;
        d["b"] = dev.b;
        d["deviation"] = dev.deviation;
        d["tolerance"] = dev.tolerance;
        d["statistical"] = dev.statistical;
        d["pass"] = dev.pass;
        deviations.append(std::move(d));
    }
    py::dict out;
    out["wavenumber_per_m"] = report.wavenumber;
    out["sigma0_m"] = report.sigma0;
    out["nbar"] = report.nbar;
    out["sigma_m"] = report.sigma;
    out["eta"] = report.eta;
    out["seed"] = report.seed;
    out["mc_samples"] = report.mc_samples;
    out["paths"] = std::move(paths);
    out["deviations"] = std::move(deviations);
    out["pass"] = report.pass;
    out["notes"] = report.notes;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "standing-wave fringe visibility models for a trapped ion";

    m.attr("HBAR") = constants::hbar;
    m.attr("PLANCK") = constants::planck;
    m.attr("ATOMIC_MASS_KG") = constants::atomic_mass;

    py::register_exception<ConvergenceError>(m, "ConvergenceError",
                                             PyExc_RuntimeError);
    py::register_exception<CapacityError>(m, "CapacityError",
                                          PyExc_ValueError);
    py::register_exception<CoverageError>(m, "CoverageError",
                                          PyExc_ValueError);
    py::register_exception<FitError>(m, "FitError", PyExc_RuntimeError);

    // numerics
    m.def("bessel_j0", &numerics::bessel_j0, py::arg("z"));
    m.def("laguerre", &numerics::laguerre, py::arg("n"), py::arg("z"));
    m.def("ho_wavefunction", &numerics::ho_wavefunction, py::arg("n"),
          py::arg("xi"));

    // domain
    m.def("wavenumber_from_wavelength", &wavenumber_from_wavelength,
          py::arg("wavelength_m"));
    m.def("ground_state_extent", &ground_state_extent, py::arg("mass_kg"),
          py::arg("omega_trap"));
    m.def("thermal_extent", &thermal_extent, py::arg("sigma0_m"),
          py::arg("nbar"));
    m.def("boltzmann_weight", &boltzmann_weight, py::arg("n"),
          py::arg("nbar"));

    py::class_<StandingWaveField>(m, "StandingWaveField")
        .def(py::init<double, double, double>(), py::arg("wavelength_m"),
             py::arg("mean_signal"), py::arg("optical_omega") = 0.0)
        .def_property_readonly("wavelength", &StandingWaveField::wavelength)
        .def_property_readonly("wavenumber", &StandingWaveField::wavenumber)
        .def_property_readonly("mean_signal", &StandingWaveField::mean_signal);

    py::class_<TrapState>(m, "TrapState")
        .def(py::init<double, double, double>(), py::arg("omega_trap"),
             py::arg("mass_kg"), py::arg("nbar"))
        .def_static("from_amu_mhz", &TrapState::from_amu_mhz,
                    py::arg("mass_amu"), py::arg("trap_freq_mhz"),
                    py::arg("nbar"))
        .def_property_readonly("omega_trap", &TrapState::omega_trap)
        .def_property_readonly("mass", &TrapState::mass)
        .def_property_readonly("nbar", &TrapState::nbar)
        .def_property_readonly("ground_state_sigma",
                               &TrapState::ground_state_sigma)
        .def_property_readonly("thermal_sigma", &TrapState::thermal_sigma);

    m.def(
        "lamb_dicke",
        [](const StandingWaveField& field, const TrapState& trap) {
            return LambDicke::from(field, trap).value();
        },
        py::arg("field"), py::arg("trap"));

    py::class_<ExperimentPreset>(m, "ExperimentPreset")
        .def_readonly("name", &ExperimentPreset::name)
        .def_readonly("wavelength", &ExperimentPreset::wavelength)
        .def_readonly("ion_mass", &ExperimentPreset::ion_mass)
        .def_readonly("measured_visibility",
                      &ExperimentPreset::measured_visibility)
        .def_readonly("published_sigma", &ExperimentPreset::published_sigma)
        .def_readonly("notes", &ExperimentPreset::notes);

    m.def("experiment_presets", [] {
        const auto presets = experiment_presets();
        return std::vector<ExperimentPreset>(presets.begin(), presets.end());
    });
    m.def("find_preset", [](const std::string& name) {
        return find_preset(name);
    });

    // spatial picture
    m.def("ideal_signal", &spatial::ideal_signal, py::arg("x_m"),
          py::arg("field"));
    m.def("observed_signal", &spatial::observed_signal, py::arg("x0_m"),
          py::arg("field"), py::arg("visibility"));
    m.def("visibility_gaussian", &spatial::visibility_gaussian, py::arg("k"),
          py::arg("sigma_m"));
    m.def(
        "visibility_from_density",
        [](const std::string& kind, double parameter, double k) {
            return spatial::visibility_from_density(
                density_from_args(kind, parameter), k);
        },
        py::arg("kind"), py::arg("parameter"), py::arg("k"),
        "Fringe visibility by quadrature for a point|gaussian|arcsine "
        "density (parameter: unused|sigma|amplitude, meters).");
    m.def(
        "scan_gaussian",
        [](double wavelength_m, double mean_signal, double sigma_m,
           const std::vector<double>& positions_m) {
            const StandingWaveField field(wavelength_m, mean_signal);
            const FringeSignal fringe = spatial::scan(
                field, spatial::GaussianDensity{sigma_m}, positions_m);
            return std::make_pair(
                std::vector<double>(fringe.positions().begin(),
                                    fringe.positions().end()),
                std::vector<double>(fringe.signals().begin(),
                                    fringe.signals().end()));
        },
        py::arg("wavelength_m"), py::arg("mean_signal"), py::arg("sigma_m"),
        py::arg("positions_m"));

    // doppler picture
    m.def(
        "time_domain_signal",
        [](double amplitude_m, double omega_trap, double center_m,
           double wavelength_m, double mean_signal, int periods,
           int steps_per_period) {
            const StandingWaveField field(wavelength_m, mean_signal);
            return doppler::time_domain_signal(
                doppler::ClassicalOscillation{amplitude_m, omega_trap,
                                              center_m},
                field, periods, steps_per_period);
        },
        py::arg("amplitude_m"), py::arg("omega_trap"), py::arg("center_m"),
        py::arg("wavelength_m"), py::arg("mean_signal"), py::arg("periods"),
        py::arg("steps_per_period"));
    m.def("classical_signal", &doppler::classical_signal,
          py::arg("amplitude_m"), py::arg("k"), py::arg("center_m"),
          py::arg("mean_signal"));
    m.def(
        "rayleigh_visibility",
        [](double k, double sigma_m, const std::string& mode,
           std::uint64_t seed, std::size_t samples) {
            if (mode == "analytic") {
                return doppler::rayleigh_visibility_analytic(k, sigma_m);
            }
            if (mode == "quadrature") {
                return doppler::rayleigh_visibility_quadrature(k, sigma_m);
            }
            if (mode == "monte_carlo") {
                return doppler::rayleigh_visibility_monte_carlo(k, sigma_m,
                                                                seed, samples)
                    .value;
            }
            throw std::invalid_argument(
                "mode must be analytic|quadrature|monte_carlo");
        },
        py::arg("k"), py::arg("sigma_m"), py::arg("mode") = "analytic",
        py::arg("seed") = 20200528, py::arg("samples") = 1000000);
    m.def("thermal_position_density",
          [](double sigma_m, const std::vector<double>& grid_m) {
              return doppler::thermal_position_density(sigma_m, grid_m);
          },
          py::arg("sigma_m"), py::arg("grid_m"));

    // which-way picture
    m.def(
        "kick_overlap",
        [](int n, double eta) { return quantum::kick_overlap(n, LambDicke(eta)); },
        py::arg("n"), py::arg("eta"));
    m.def(
        "thermal_visibility",
        [](double nbar, double eta) {
            return quantum::thermal_visibility(nbar, LambDicke(eta));
        },
        py::arg("nbar"), py::arg("eta"));
    m.def(
        "travelling_wave_rate",
        [](double nbar, double eta, double rest_rate, int basis_cutoff) {
            return quantum::travelling_wave_rate(nbar, LambDicke(eta),
                                                 rest_rate, basis_cutoff);
        },
        py::arg("nbar"), py::arg("eta"), py::arg("rest_rate"),
        py::arg("basis_cutoff"));
    m.def(
        "standing_wave_signal",
        [](double x0_m, double nbar, double eta, double k, double rest_rate) {
            return quantum::standing_wave_signal(x0_m, nbar, LambDicke(eta),
                                                 k, rest_rate);
        },
        py::arg("x0_m"), py::arg("nbar"), py::arg("eta"), py::arg("k"),
        py::arg("rest_rate"));
    m.def(
        "thermal_density",
        [](const std::vector<double>& x_m, double nbar, double sigma0_m) {
            return quantum::thermal_density(x_m, nbar, sigma0_m);
        },
        py::arg("x_m"), py::arg("nbar"), py::arg("sigma0_m"));
    m.def(
        "which_way_report",
        [](double nbar, double eta) {
            const auto report = quantum::which_way_report(nbar, LambDicke(eta));
            py::dict d;
            d["nbar"] = report.nbar;
            d["eta"] = report.eta;
            d["overlaps"] = report.overlaps;
            d["thermal_average_overlap"] = report.thermal_average_overlap;
            d["visibility"] = report.visibility;
            d["full_which_way"] = report.full_which_way;
            d["interpretation"] = report.interpretation;
            return d;
        },
        py::arg("nbar"), py::arg("eta"));

    // analysis
    py::class_<analysis::FitResult>(m, "FitResult")
        .def_readonly("mean_level", &analysis::FitResult::mean_level)
        .def_readonly("visibility", &analysis::FitResult::visibility)
        .def_readonly("phase", &analysis::FitResult::phase)
        .def_readonly("mean_level_error",
                      &analysis::FitResult::mean_level_error)
        .def_readonly("visibility_error",
                      &analysis::FitResult::visibility_error)
        .def_readonly("phase_error", &analysis::FitResult::phase_error)
        .def_readonly("residual_norm", &analysis::FitResult::residual_norm);

    m.def("sigma_from_visibility", &analysis::sigma_from_visibility,
          py::arg("visibility"), py::arg("wavelength_m"));
    m.def("nbar_from_sigma", &analysis::nbar_from_sigma, py::arg("sigma_m"),
          py::arg("sigma0_m"));
    m.def(
        "thermal_energy",
        [](double mass_kg, double omega_trap, double sigma_m) {
            const auto e = analysis::thermal_energy(mass_kg, omega_trap,
                                                    sigma_m);
            return std::make_pair(e.joules, e.frequency_hz);
        },
        py::arg("mass_kg"), py::arg("omega_trap"), py::arg("sigma_m"),
        "Returns (energy_J, energy_over_h_Hz).");
    m.def(
        "fit_fringe",
        [](const std::vector<double>& positions_m,
           const std::vector<double>& signals, double k) {
            return analysis::fit_fringe(
                FringeSignal(positions_m, signals, ScanMetadata{"", k, 0.0, {}}),
                k);
        },
        py::arg("positions_m"), py::arg("signals"), py::arg("k"));
    m.def(
        "estimate_visibility_minmax",
        [](const std::vector<double>& positions_m,
           const std::vector<double>& signals, double k) {
            return analysis::estimate_visibility_minmax(
                FringeSignal(positions_m, signals, ScanMetadata{"", k, 0.0, {}}));
        },
        py::arg("positions_m"), py::arg("signals"), py::arg("k"));
    m.def(
        "cross_check",
        [](double wavenumber, double sigma0_m, double nbar,
           std::uint64_t seed, std::size_t mc_samples) {
            analysis::CrossCheckInput input;
            input.wavenumber = wavenumber;
            input.sigma0 = sigma0_m;
            input.nbar = nbar;
            input.seed = seed;
            input.mc_samples = mc_samples;
            return report_to_dict(analysis::cross_check(input));
        },
        py::arg("wavenumber"), py::arg("sigma0_m"), py::arg("nbar"),
        py::arg("seed") = 20200528, py::arg("mc_samples") = 100000);
    m.def(
        "cross_check_preset",
        [](const std::string& name, double trap_freq_mhz, std::uint64_t seed,
           std::size_t mc_samples) {
            auto input = analysis::cross_check_input_from_preset(
                find_preset(name),
                2.0 * constants::pi * trap_freq_mhz * 1e6);
            input.seed = seed;
            input.mc_samples = mc_samples;
            return report_to_dict(analysis::cross_check(input));
        },
        py::arg("name"), py::arg("trap_freq_mhz") = 1.0,
        py::arg("seed") = 20200528, py::arg("mc_samples") = 100000);

#ifdef IONPROBE_VERSION
    m.attr("__version__") = IONPROBE_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
