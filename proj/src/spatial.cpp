#include "ionprobe/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ionprobe::spatial {

namespace {

using numerics::QuadratureSpec;
using numerics::integrate;

constexpr double kHalfPi = 0.5 * constants::pi;

double gaussian_pdf(double x, double sigma) {
    const double u = x / sigma;
    return std::exp(-0.5 * u * u) / (sigma * std::sqrt(2.0 * constants::pi));
}

void validate_custom(const CustomDensity& rho, const QuadratureSpec& spec) {
    if (!rho.density) {
        throw std::invalid_argument("custom density must be callable");
    }
    if (!(rho.support_half_width > 0.0) ||
        !std::isfinite(rho.support_half_width)) {
        throw std::invalid_argument(
            "custom density must declare a positive support half-width");
    }
    const double l = rho.support_half_width;
    const double norm = integrate(rho.density, -l, l, spec);
    if (std::abs(norm - 1.0) > 1e-9) {
        throw std::invalid_argument(
            "custom density does not integrate to 1 over its support");
    }
    // Symmetry about 0 is assumed by the visibility integral; spot check.
    const double peak = std::abs(rho.density(0.0));
    for (const double frac : {0.17, 0.43, 0.81}) {
        const double x = frac * l;
        const double left = rho.density(-x);
        const double right = rho.density(x);
        if (left < 0.0 || right < 0.0) {
            throw std::invalid_argument("custom density must be non-negative");
        }
        if (std::abs(left - right) > 1e-9 * std::max(peak, 1.0)) {
            throw std::invalid_argument(
                "custom density must be symmetric about 0");
        }
    }
}

}  // namespace

double ideal_signal(double x, const StandingWaveField& field) {
    const double c = std::cos(field.wavenumber() * x);
    return 2.0 * field.mean_signal() * c * c;
}

double observed_signal(double x0, const StandingWaveField& field,
                       double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw std::invalid_argument("visibility must lie in [0, 1]");
    }
    return field.mean_signal() *
           (1.0 + visibility * std::cos(2.0 * field.wavenumber() * x0));
}

double visibility_from_density(const PositionDensity& density, double k,
                               const QuadratureSpec& spec) {
    if (k < 0.0 || !std::isfinite(k)) {
        throw std::invalid_argument("wavenumber must be non-negative");
    }

    const double value = std::visit(
        [&](const auto& rho) -> double {
            using T = std::decay_t<decltype(rho)>;
            if constexpr (std::is_same_v<T, PointLike>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, GaussianDensity>) {
                if (rho.sigma < 0.0 || !std::isfinite(rho.sigma)) {
                    throw std::invalid_argument(
                        "gaussian sigma must be non-negative");
                }
                if (rho.sigma == 0.0 || k == 0.0) return 1.0;
                // Tails beyond 8 sigma contribute < 1e-14.
                const double l = 8.0 * rho.sigma;
                return integrate(
                    [&](double x) {
                        return gaussian_pdf(x, rho.sigma) * std::cos(2.0 * k * x);
                    },
                    -l, l, spec);
            } else if constexpr (std::is_same_v<T, ArcsineDensity>) {
                if (!(rho.amplitude > 0.0) || !std::isfinite(rho.amplitude)) {
                    throw std::invalid_argument(
                        "arcsine amplitude must be positive");
                }
                if (k == 0.0) return 1.0;
                // x = xc sin(theta) removes the edge singularities exactly:
                // V = (1/pi) int cos(2 k xc sin theta) dtheta.
                const double a = 2.0 * k * rho.amplitude;
                return integrate(
                           [&](double theta) {
                               return std::cos(a * std::sin(theta));
                           },
                           -kHalfPi, kHalfPi, spec) /
                       constants::pi;
            } else {
                validate_custom(rho, spec);
                if (k == 0.0) return 1.0;
                const double l = rho.support_half_width;
                return integrate(
                    [&](double x) {
                        return rho.density(x) * std::cos(2.0 * k * x);
                    },
                    -l, l, spec);
            }
        },
        density);

    return std::clamp(value, -1.0, 1.0);
}

double visibility_gaussian(double k, double sigma) {
    if (k < 0.0 || !std::isfinite(k)) {
        throw std::invalid_argument("wavenumber must be non-negative");
    }
    if (sigma < 0.0 || !std::isfinite(sigma)) {
        throw std::invalid_argument("sigma must be non-negative");
    }
    const double ks = k * sigma;
    return std::exp(-2.0 * ks * ks);
}

FringeSignal scan(const StandingWaveField& field,
                  const PositionDensity& density,
                  std::span<const double> positions,
                  const numerics::QuadratureSpec& spec) {
    // V from a symmetric density can be negative past the first zero of
    // its Fourier transform; the fringe then flips phase, so the signed
    // value enters the signal.
    const double v = visibility_from_density(density, field.wavenumber(), spec);

    std::vector<double> xs(positions.begin(), positions.end());
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (const double x0 : xs) {
        ys.push_back(field.mean_signal() *
                     (1.0 + v * std::cos(2.0 * field.wavenumber() * x0)));
    }

    ScanMetadata meta;
    meta.model = "spatial";
    meta.wavenumber = field.wavenumber();
    meta.mean_signal = field.mean_signal();
    meta.extra.emplace_back("visibility", v);
    return FringeSignal(std::move(xs), std::move(ys), std::move(meta));
}

}  // namespace ionprobe::spatial
