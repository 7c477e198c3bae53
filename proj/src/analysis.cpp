#include "ionprobe/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ionprobe/doppler.hpp"
#include "ionprobe/quantum.hpp"
#include "ionprobe/spatial.hpp"

namespace ionprobe::analysis {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be positive");
    }
}

// Solve the symmetric 3x3 system M p = r by Gaussian elimination with
// partial pivoting; returns false when a pivot collapses.
bool solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> r,
            std::array<double, 3>& out) {
    std::array<int, 3> idx{0, 1, 2};
    double scale = 0.0;
    for (const auto& row : m) {
        for (const double v : row) scale = std::max(scale, std::abs(v));
    }
    if (scale == 0.0) return false;

    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 3; ++row) {
            if (std::abs(m[idx[row]][col]) > std::abs(m[idx[pivot]][col])) {
                pivot = row;
            }
        }
        std::swap(idx[col], idx[pivot]);
        const double lead = m[idx[col]][col];
        if (std::abs(lead) < 1e-12 * scale) return false;
        for (int row = col + 1; row < 3; ++row) {
            const double f = m[idx[row]][col] / lead;
            for (int j = col; j < 3; ++j) m[idx[row]][j] -= f * m[idx[col]][j];
            r[idx[row]] -= f * r[idx[col]];
        }
    }
    for (int col = 2; col >= 0; --col) {
        double v = r[idx[col]];
        for (int j = col + 1; j < 3; ++j) v -= m[idx[col]][j] * out[j];
        out[col] = v / m[idx[col]][col];
    }
    return true;
}

// Inverse of a symmetric positive-definite 3x3 matrix via adjugate.
bool invert3(const std::array<std::array<double, 3>, 3>& m,
             std::array<std::array<double, 3>, 3>& inv) {
    const double a = m[0][0], b = m[0][1], c = m[0][2];
    const double d = m[1][1], e = m[1][2], f = m[2][2];
    const double det = a * (d * f - e * e) - b * (b * f - c * e) +
                       c * (b * e - c * d);
    double scale = 0.0;
    for (const auto& row : m) {
        for (const double v : row) scale = std::max(scale, std::abs(v));
    }
    if (std::abs(det) < 1e-12 * scale * scale * scale) return false;
    inv[0][0] = (d * f - e * e) / det;
    inv[0][1] = inv[1][0] = (c * e - b * f) / det;
    inv[0][2] = inv[2][0] = (b * e - c * d) / det;
    inv[1][1] = (a * f - c * c) / det;
    inv[1][2] = inv[2][1] = (b * c - a * e) / det;
    inv[2][2] = (a * d - b * b) / det;
    return true;
}

}  // namespace

double sigma_from_visibility(double visibility, double wavelength) {
    if (!(visibility > 0.0 && visibility <= 1.0)) {
        throw std::invalid_argument("visibility must lie in (0, 1]");
    }
    const double k = wavenumber_from_wavelength(wavelength);
    return std::sqrt(-std::log(visibility) / 2.0) / k;
}

double nbar_from_sigma(double sigma, double sigma0) {
    require_positive(sigma0, "ground-state extent");
    if (!(sigma >= sigma0)) {
        throw std::invalid_argument(
            "thermal extent below the ground-state extent is unphysical");
    }
    const double r = sigma / sigma0;
    return 0.5 * (r * r - 1.0);
}

ThermalEnergy thermal_energy(double mass, double omega_trap, double sigma) {
    require_positive(mass, "mass");
    require_positive(omega_trap, "trap frequency");
    require_positive(sigma, "sigma");
    const double joules = mass * omega_trap * omega_trap * sigma * sigma;
    return ThermalEnergy{joules, joules / constants::planck};
}

double estimate_visibility_minmax(const FringeSignal& signal) {
    if (signal.size() < 2) {
        throw CoverageError("need at least two samples");
    }
    const double k = signal.metadata().wavenumber;
    if (!(k > 0.0)) {
        throw CoverageError(
            "scan metadata does not carry a wavenumber; cannot verify that "
            "the samples span a fringe period");
    }
    const double span = signal.positions().back() - signal.positions().front();
    const double period = constants::pi / k;  // fringe period lambda/2
    if (span < period) {
        throw CoverageError("samples span less than one fringe period");
    }

    const auto [lo, hi] = std::minmax_element(signal.signals().begin(),
                                              signal.signals().end());
    const double sum = *hi + *lo;
    if (sum == 0.0) return 0.0;
    return (*hi - *lo) / sum;
}

FitResult fit_fringe(const FringeSignal& signal, double wavenumber) {
    require_positive(wavenumber, "wavenumber");
    const auto xs = signal.positions();
    const auto ys = signal.signals();
    const std::size_t n = xs.size();
    if (n < 4) throw FitError("need at least 4 samples to fit a fringe");

    // S = a + b cos(2kx) + c sin(2kx);  A = a, V = |(b, c)| / a,
    // phi = atan2(-c, b).
    std::array<std::array<double, 3>, 3> mat{};
    std::array<double, 3> rhs{};
    for (std::size_t i = 0; i < n; ++i) {
        const double arg = 2.0 * wavenumber * xs[i];
        const std::array<double, 3> row{1.0, std::cos(arg), std::sin(arg)};
        for (int p = 0; p < 3; ++p) {
            for (int q = 0; q < 3; ++q) mat[p][q] += row[p] * row[q];
            rhs[p] += row[p] * ys[i];
        }
    }

    std::array<double, 3> coeff{};
    if (!solve3(mat, rhs, coeff)) {
        throw FitError("degenerate sample grid: normal equations are singular");
    }

    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double arg = 2.0 * wavenumber * xs[i];
        const double model =
            coeff[0] + coeff[1] * std::cos(arg) + coeff[2] * std::sin(arg);
        ssr += (ys[i] - model) * (ys[i] - model);
    }

    std::array<std::array<double, 3>, 3> cov{};
    if (!invert3(mat, cov)) {
        throw FitError("degenerate sample grid: normal equations are singular");
    }
    const double variance = (n > 3) ? ssr / static_cast<double>(n - 3) : 0.0;
    for (auto& row : cov) {
        for (double& v : row) v *= variance;
    }

    const double a = coeff[0];
    const double b = coeff[1];
    const double c = coeff[2];
    if (!(a > 0.0)) {
        throw FitError("fitted mean level is not positive");
    }
    const double amp = std::hypot(b, c);

    FitResult fit{};
    fit.mean_level = a;
    fit.visibility = std::min(amp / a, 1.0);
    fit.phase = (amp > 0.0) ? std::atan2(-c, b) : 0.0;
    fit.residual_norm = std::sqrt(ssr);

    // First-order propagation through (a, b, c) -> (A, V, phi).
    fit.mean_level_error = std::sqrt(std::max(0.0, cov[0][0]));
    if (amp > 0.0) {
        const double dv_da = -amp / (a * a);
        const double dv_db = b / (amp * a);
        const double dv_dc = c / (amp * a);
        double var_v = 0.0;
        const std::array<double, 3> jv{dv_da, dv_db, dv_dc};
        for (int p = 0; p < 3; ++p) {
            for (int q = 0; q < 3; ++q) var_v += jv[p] * cov[p][q] * jv[q];
        }
        fit.visibility_error = std::sqrt(std::max(0.0, var_v));

        const double amp2 = amp * amp;
        const double dp_db = c / amp2;   // d atan2(-c, b) / db
        const double dp_dc = -b / amp2;  // d atan2(-c, b) / dc
        const double var_p = dp_db * dp_db * cov[1][1] +
                             2.0 * dp_db * dp_dc * cov[1][2] +
                             dp_dc * dp_dc * cov[2][2];
        fit.phase_error = std::sqrt(std::max(0.0, var_p));
    } else {
        fit.visibility_error =
            std::sqrt(std::max(0.0, cov[1][1] + cov[2][2])) / a;
        fit.phase_error = constants::pi;  // undetermined at zero amplitude
    }
    return fit;
}

CrossCheckInput cross_check_input_from_preset(const ExperimentPreset& preset,
                                              double omega_trap) {
    require_positive(omega_trap, "trap frequency");
    CrossCheckInput input;
    input.wavenumber = wavenumber_from_wavelength(preset.wavelength);
    input.sigma0 = ground_state_extent(preset.ion_mass, omega_trap);
    input.nbar = nbar_from_sigma(preset.published_sigma, input.sigma0);
    return input;
}

VisibilityReport cross_check(const CrossCheckInput& input) {
    require_positive(input.sigma0, "ground-state extent");
    if (input.wavenumber < 0.0 || !std::isfinite(input.wavenumber)) {
        throw std::invalid_argument("wavenumber must be non-negative");
    }
    if (input.nbar < 0.0 || !std::isfinite(input.nbar)) {
        throw std::invalid_argument("nbar must be non-negative");
    }

    VisibilityReport report{};
    report.wavenumber = input.wavenumber;
    report.sigma0 = input.sigma0;
    report.nbar = input.nbar;
    report.sigma = thermal_extent(input.sigma0, input.nbar);
    report.eta = input.wavenumber * input.sigma0;
    report.seed = input.seed;
    report.mc_samples = input.mc_samples;
    report.notes.push_back(
        "classical closed form evaluates J0(2 k xc); the factor of 2 is "
        "fixed by the time-domain average");

    auto run_path = [&](const std::string& name, auto&& compute,
                        bool statistical) {
        PathValue path;
        path.name = name;
        path.statistical = statistical;
        try {
            path.value = compute(path);
        } catch (const std::exception& err) {
            path.error = err.what();
        }
        report.paths.push_back(std::move(path));
    };

    numerics::QuadratureSpec tight{1e-13, 1e-13, 2000};
    run_path(
        "spatial_quadrature",
        [&](PathValue&) {
            return spatial::visibility_from_density(
                spatial::GaussianDensity{report.sigma}, input.wavenumber,
                tight);
        },
        false);
    run_path(
        "doppler_analytic",
        [&](PathValue&) {
            return doppler::rayleigh_visibility_analytic(input.wavenumber,
                                                         report.sigma);
        },
        false);
    run_path(
        "doppler_monte_carlo",
        [&](PathValue& path) {
            const auto mc = doppler::rayleigh_visibility_monte_carlo(
                input.wavenumber, report.sigma, input.seed, input.mc_samples);
            path.standard_error = mc.standard_error;
            return mc.value;
        },
        true);
    run_path(
        "quantum_thermal_sum",
        [&](PathValue&) {
            return quantum::thermal_visibility(input.nbar,
                                               LambDicke(report.eta));
        },
        false);

    auto find = [&](const std::string& name) -> const PathValue& {
        for (const auto& p : report.paths) {
            if (p.name == name) return p;
        }
        throw std::logic_error("unknown path " + name);
    };

    auto compare = [&](const std::string& a, const std::string& b,
                       double tolerance, bool statistical) {
        const PathValue& pa = find(a);
        const PathValue& pb = find(b);
        if (!pa.value || !pb.value) return;  // failure already recorded
        PairDeviation dev;
        dev.a = a;
        dev.b = b;
        dev.deviation = std::abs(*pa.value - *pb.value);
        dev.statistical = statistical;
        dev.tolerance = tolerance;
        dev.pass = dev.deviation <= dev.tolerance;
        report.deviations.push_back(dev);
    };

    compare("spatial_quadrature", "doppler_analytic",
            input.tol_spatial_doppler, false);
    compare("spatial_quadrature", "quantum_thermal_sum",
            input.tol_spatial_quantum, false);
    compare("doppler_analytic", "quantum_thermal_sum",
            input.tol_spatial_doppler, false);

    const PathValue& mc = find("doppler_monte_carlo");
    if (mc.value) {
        const double mc_tol =
            input.mc_abs_tol ? *input.mc_abs_tol
                             : input.mc_sigma_bound * mc.standard_error;
        compare("doppler_analytic", "doppler_monte_carlo", mc_tol, true);
    }

    report.pass = true;
    for (const auto& p : report.paths) {
        if (!p.value) report.pass = false;
    }
    for (const auto& d : report.deviations) {
        if (!d.pass) report.pass = false;
    }
    return report;
}

}  // namespace ionprobe::analysis
