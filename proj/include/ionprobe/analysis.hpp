#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ionprobe/domain.hpp"

namespace ionprobe::analysis {

/// Parameters of S(x0) = A (1 + V cos(2 k x0 + phi)) recovered by linear
/// least squares, with first-order standard errors.
struct FitResult {
    double mean_level;
    double visibility;
    double phase;
    double mean_level_error;
    double visibility_error;
    double phase_error;
    double residual_norm;
};

/// One model route inside a cross-check report.
struct PathValue {
    std::string name;
    std::optional<double> value;   // empty when the route failed
    std::string error;             // failure message when empty
    double standard_error = 0.0;   // Monte Carlo only
    bool statistical = false;
};

/// Pairwise comparison between two routes.
struct PairDeviation {
    std::string a;
    std::string b;
    double deviation;
    double tolerance;
    bool statistical;
    bool pass;
};

/// All model routes to the fringe visibility for one parameter set, with
/// pairwise deviations and verdicts.
struct VisibilityReport {
    double wavenumber;
    double sigma0;
    double nbar;
    double sigma;
    double eta;
    std::uint64_t seed;
    std::size_t mc_samples;
    std::vector<PathValue> paths;
    std::vector<PairDeviation> deviations;
    bool pass;
    std::vector<std::string> notes;
};

/// rms extent from a measured visibility: sigma = sqrt(-ln V / 2) / k.
/// The result is an upper limit on the true extent, since other
/// broadening mechanisms also reduce V. Throws for V outside (0, 1].
double sigma_from_visibility(double visibility, double wavelength);

/// Mean occupation from thermal and ground-state extents:
/// nbar = (sigma^2/sigma0^2 - 1) / 2. Throws when sigma < sigma0.
double nbar_from_sigma(double sigma, double sigma0);

struct ThermalEnergy {
    double joules;
    double frequency_hz;  // E / h, for comparison with transition linewidths
};

/// Thermal energy E = M Omega_t^2 sigma^2 (equals hbar Omega_t / 2 at
/// sigma = sigma0).
ThermalEnergy thermal_energy(double mass, double omega_trap, double sigma);

/// Standard min-max visibility (Smax - Smin) / (Smax + Smin) over the
/// samples. Underestimates V when the grid misses the extrema; requires
/// samples spanning at least one fringe period (lambda/2).
double estimate_visibility_minmax(const FringeSignal& signal);

/// Exact linear least squares in the basis {1, cos 2kx, sin 2kx};
/// no iterative optimizer, no starting values.
FitResult fit_fringe(const FringeSignal& signal, double wavenumber);

/// Parameters for a multi-route visibility comparison.
struct CrossCheckInput {
    double wavenumber;
    double sigma0;
    double nbar;
    std::uint64_t seed = 20200528;
    std::size_t mc_samples = 1000000;
    double tol_spatial_doppler = 1e-9;
    double tol_spatial_quantum = 1e-10;
    double mc_sigma_bound = 3.0;
    /// When set, replaces the statistical 3-sigma rule for the Monte
    /// Carlo route with a fixed absolute tolerance.
    std::optional<double> mc_abs_tol;
};

/// Split a preset's published extent into (sigma0, nbar) for a supplied
/// trap frequency; the published extent itself fixes the product.
CrossCheckInput cross_check_input_from_preset(const ExperimentPreset& preset,
                                              double omega_trap);

/// Compute the visibility along every route (spatial quadrature,
/// closed-form thermal average, Monte Carlo, thermal number-state sum)
/// and compare. A route failure is recorded in its PathValue; it fails
/// the report but does not abort the others.
VisibilityReport cross_check(const CrossCheckInput& input);

}  // namespace ionprobe::analysis
