#include "ionprobe/doppler.hpp"

#include <cmath>
#include <complex>

namespace ionprobe::doppler {

namespace {

using numerics::QuadratureSpec;
using numerics::SeededSampler;

void require_nonnegative(double value, const char* name) {
    if (value < 0.0 || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) +
                                    " must be non-negative");
    }
}

}  // namespace

double time_domain_signal(const ClassicalOscillation& osc,
                          const StandingWaveField& field, int periods,
                          int steps_per_period) {
    require_nonnegative(osc.amplitude, "oscillation amplitude");
    if (!(osc.omega_trap > 0.0)) {
        throw std::invalid_argument("trap frequency must be positive");
    }
    if (periods < 1) throw std::invalid_argument("periods must be >= 1");
    if (steps_per_period < 16) {
        throw std::invalid_argument("steps_per_period must be >= 16");
    }

    const double k = field.wavenumber();
    const std::complex<double> mirror_phase =
        std::exp(std::complex<double>(0.0, 2.0 * k * osc.center));

    const long long total = static_cast<long long>(periods) * steps_per_period;
    const double period = 2.0 * constants::pi / osc.omega_trap;
    const double dt = period * periods / static_cast<double>(total);

    double sum = 0.0;
    double comp = 0.0;  // Kahan carry
    for (long long j = 0; j < total; ++j) {
        const double t = (j + 0.5) * dt;
        const double phase = k * osc.amplitude * std::sin(osc.omega_trap * t);
        const std::complex<double> direct =
            std::exp(std::complex<double>(0.0, phase));
        const std::complex<double> reflected =
            mirror_phase * std::exp(std::complex<double>(0.0, -phase));
        const double sample = std::norm(direct + reflected);
        const double y = sample - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }

    // A stationary ion at an antinode gives |1 + 1|^2 = 4 -> 2 S.
    return 0.5 * field.mean_signal() * sum / static_cast<double>(total);
}

double classical_signal(double amplitude, double k, double center,
                        double mean_signal) {
    require_nonnegative(amplitude, "oscillation amplitude");
    require_nonnegative(mean_signal, "mean signal");
    require_nonnegative(k, "wavenumber");
    return mean_signal * (1.0 + numerics::bessel_j0(2.0 * k * amplitude) *
                                    std::cos(2.0 * k * center));
}

double rayleigh_visibility_analytic(double k, double sigma) {
    return spatial::visibility_gaussian(k, sigma);
}

double rayleigh_visibility_quadrature(double k, double sigma,
                                      const QuadratureSpec& spec) {
    require_nonnegative(k, "wavenumber");
    require_nonnegative(sigma, "sigma");
    if (sigma == 0.0 || k == 0.0) return 1.0;
    // Rayleigh tail beyond 8 sigma is below 1.3e-14.
    return numerics::integrate(
        [&](double xc) {
            const double u = xc / sigma;
            return (xc / (sigma * sigma)) * std::exp(-0.5 * u * u) *
                   numerics::bessel_j0(2.0 * k * xc);
        },
        0.0, 8.0 * sigma, spec);
}

MonteCarloEstimate rayleigh_visibility_monte_carlo(double k, double sigma,
                                                   std::uint64_t seed,
                                                   std::size_t samples) {
    require_nonnegative(k, "wavenumber");
    require_nonnegative(sigma, "sigma");
    if (samples < 2) throw std::invalid_argument("need at least 2 samples");
    if (sigma == 0.0 || k == 0.0) {
        return MonteCarloEstimate{1.0, 0.0, seed, samples};
    }

    SeededSampler sampler(seed);
    double sum = 0.0;
    double sum_sq = 0.0;
    double comp = 0.0;
    double comp_sq = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double xc = numerics::sample_rayleigh(sampler, sigma);
        const double v = numerics::bessel_j0(2.0 * k * xc);
        double y = v - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        y = v * v - comp_sq;
        s = sum_sq + y;
        comp_sq = (s - sum_sq) - y;
        sum_sq = s;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return MonteCarloEstimate{mean, std::sqrt(variance / n), seed, samples};
}

double rayleigh_visibility(double k, double sigma,
                           const ThermalAverageMode& mode) {
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Analytic>) {
                return rayleigh_visibility_analytic(k, sigma);
            } else if constexpr (std::is_same_v<T, Quadrature>) {
                return rayleigh_visibility_quadrature(k, sigma, m.spec);
            } else {
                return rayleigh_visibility_monte_carlo(k, sigma, m.seed,
                                                       m.samples)
                    .value;
            }
        },
        mode);
}

spatial::PositionDensity classical_position_density(double amplitude) {
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
        throw std::invalid_argument("oscillation amplitude must be positive");
    }
    return spatial::ArcsineDensity{amplitude};
}

double thermal_position_density_at(double sigma, double x,
                                   const QuadratureSpec& spec) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("sigma must be positive");
    }
    if (!std::isfinite(x)) throw std::invalid_argument("x must be finite");

    // rho(x) = int_{|x|}^inf (xc/sigma^2) e^{-xc^2/2s^2} / (pi sqrt(xc^2-x^2)) dxc
    // with u = sqrt(xc^2 - x^2):
    //        = int_0^inf e^{-(x^2+u^2)/2s^2} / (pi sigma^2) du.
    const double norm = 1.0 / (constants::pi * sigma * sigma);
    return numerics::integrate(
        [&](double u) {
            return norm * std::exp(-0.5 * (x * x + u * u) / (sigma * sigma));
        },
        0.0, 8.0 * sigma, spec);
}

std::vector<double> thermal_position_density(double sigma,
                                             std::span<const double> grid,
                                             const QuadratureSpec& spec) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (const double x : grid) {
        out.push_back(thermal_position_density_at(sigma, x, spec));
    }
    return out;
}

}  // namespace ionprobe::doppler
