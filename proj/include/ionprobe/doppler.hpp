#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "ionprobe/domain.hpp"
#include "ionprobe/numerics.hpp"
#include "ionprobe/spatial.hpp"

namespace ionprobe::doppler {

/// Classical harmonic motion of the ion: x(t) = center + amplitude *
/// sin(Omega_t t). `center` is the trap position x0 or, in the mirror
/// setup, the trap-to-mirror distance L; the two enter every formula
/// through the same phase 2k*center.
struct ClassicalOscillation {
    double amplitude;
    double omega_trap;
    double center;
};

/// Brute-force time average of the two phase-modulated partial waves,
/// |exp(i k xc sin wt) + exp(2ikL) exp(-i k xc sin wt)|^2, over an
/// integer number of trap periods, scaled so that a stationary ion at an
/// antinode gives 2 S. Serves as the independent oracle for
/// classical_signal.
double time_domain_signal(const ClassicalOscillation& osc,
                          const StandingWaveField& field, int periods,
                          int steps_per_period);

/// Closed-form time average: S (1 + J0(2 k xc) cos(2 k center)).
/// The Bessel argument 2*k*xc is fixed by the time-domain average.
double classical_signal(double amplitude, double k, double center,
                        double mean_signal);

double rayleigh_visibility_analytic(double k, double sigma);

/// Thermal average of J0(2 k xc) over the Rayleigh amplitude density
/// (xc/sigma^2) exp(-xc^2 / 2 sigma^2), by quadrature.
double rayleigh_visibility_quadrature(
    double k, double sigma, const numerics::QuadratureSpec& spec = {});

struct MonteCarloEstimate {
    double value;
    double standard_error;
    std::uint64_t seed;
    std::size_t samples;
};

/// Same thermal average by seeded Monte Carlo over sampled amplitudes.
MonteCarloEstimate rayleigh_visibility_monte_carlo(double k, double sigma,
                                                   std::uint64_t seed,
                                                   std::size_t samples);

/// Mode selector mirroring the three averaging routes above.
struct Analytic {};
struct Quadrature {
    numerics::QuadratureSpec spec{};
};
struct MonteCarlo {
    std::uint64_t seed;
    std::size_t samples;
};
using ThermalAverageMode = std::variant<Analytic, Quadrature, MonteCarlo>;

double rayleigh_visibility(double k, double sigma,
                           const ThermalAverageMode& mode);

/// Position density of a classical oscillator with fixed amplitude.
spatial::PositionDensity classical_position_density(double amplitude);

/// Thermal position density evaluated at x by integrating the arcsine
/// density over the Rayleigh amplitude distribution. The substitution
/// u = sqrt(xc^2 - x^2) removes the turning-point singularity exactly.
double thermal_position_density_at(double sigma, double x,
                                   const numerics::QuadratureSpec& spec = {});

/// Samples of the thermal position density on a grid.
std::vector<double> thermal_position_density(
    double sigma, std::span<const double> grid,
    const numerics::QuadratureSpec& spec = {});

}  // namespace ionprobe::doppler
