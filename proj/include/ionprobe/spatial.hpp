#pragma once

#include <functional>
#include <span>
#include <variant>

#include "ionprobe/domain.hpp"
#include "ionprobe/numerics.hpp"

namespace ionprobe::spatial {

/// Probe with no spatial extent; full-contrast fringes.
struct PointLike {};

/// Gaussian position density with rms extent sigma.
struct GaussianDensity {
    double sigma;
};

/// Position density of a fixed-amplitude classical oscillation,
/// 1 / (pi sqrt(xc^2 - x^2)) on (-xc, xc).
struct ArcsineDensity {
    double amplitude;
};

/// Caller-supplied symmetric density. The declared support half-width
/// bounds the quadrature domain; the density must be negligible beyond
/// it. Normalization and symmetry are checked before use.
struct CustomDensity {
    std::function<double(double)> density;
    double support_half_width;
};

using PositionDensity =
    std::variant<PointLike, GaussianDensity, ArcsineDensity, CustomDensity>;

/// Signal of a point probe in the standing wave: 2 S cos^2(kx).
double ideal_signal(double x, const StandingWaveField& field);

/// Fringe signal at trap position x0 for a probe of visibility V:
/// S (1 + V cos 2kx0). Throws for V outside [0, 1].
double observed_signal(double x0, const StandingWaveField& field,
                       double visibility);

/// Fringe visibility of a probe with position density rho: the cosine
/// Fourier component of rho at spatial frequency 2k, evaluated by
/// quadrature (closed forms are not used here; they serve as oracles).
double visibility_from_density(const PositionDensity& density, double k,
                               const numerics::QuadratureSpec& spec = {});

/// Closed-form visibility of a Gaussian probe: exp(-2 (k sigma)^2).
double visibility_gaussian(double k, double sigma);

/// Fringe scan over the given strictly-increasing trap positions.
FringeSignal scan(const StandingWaveField& field,
                  const PositionDensity& density,
                  std::span<const double> positions,
                  const numerics::QuadratureSpec& spec = {});

}  // namespace ionprobe::spatial
