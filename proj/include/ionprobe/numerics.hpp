#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "ionprobe/errors.hpp"

namespace ionprobe::numerics {

/// Largest polynomial / eigenfunction order the recurrences accept.
inline constexpr int kMaxOrder = 2000;

/// Zero-order Bessel function of the first kind.
///
/// Power series below |z| = 16, Hankel asymptotic expansion beyond, both
/// evaluated in extended precision. Absolute error stays below 1e-12 for
/// |z| <= 50 (and well beyond).
double bessel_j0(double z);

/// Laguerre polynomial L_n(z) via the three-term recurrence.
/// Throws CapacityError for n > kMaxOrder.
double laguerre(int n, double z);

/// Associated Laguerre polynomial L_n^alpha(z), integer alpha >= 0.
double assoc_laguerre(int n, int alpha, double z);

/// Harmonic-oscillator eigenfunction psi_n at dimensionless coordinate
/// xi = x / (sigma0 * sqrt(2)), normalized so that
/// integral psi_n(xi)^2 dxi = 1. psi_0(0) = pi^(-1/4).
///
/// Uses the normalized two-term recurrence
///   psi_n = xi sqrt(2/n) psi_{n-1} - sqrt((n-1)/n) psi_{n-2},
/// which keeps every intermediate O(1) and is stable to large n.
double ho_wavefunction(int n, double xi);

/// All eigenfunctions psi_0..psi_{n_max} at one point in a single
/// recurrence pass. out.size() must be n_max + 1.
void ho_wavefunctions(int n_max, double xi, std::span<double> out);

/// Tolerances and budget for adaptive quadrature.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 500;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
///
/// Bisects the subinterval with the largest error estimate until the
/// summed estimate satisfies max(abs_tol, rel_tol * |result|). Throws
/// ConvergenceError carrying the best estimate when the subdivision
/// budget runs out.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

/// Counter-based deterministic uniform generator. The draw stream is a
/// pure function of (seed, counter), so identical seeds reproduce
/// identical streams bit-exactly. Not safe to share across concurrent
/// tasks; derive per-task samplers with split() instead.
class SeededSampler {
public:
    explicit SeededSampler(std::uint64_t seed) noexcept : seed_(seed) {}

    /// Uniform draw in (0, 1].
    double next_uniform() noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t counter() const noexcept { return counter_; }

    /// Independent sampler with a seed derived from (seed, stream).
    SeededSampler split(std::uint64_t stream) const noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

/// Rayleigh draw via inverse CDF: x = sigma * sqrt(-2 ln u).
/// Throws std::invalid_argument for sigma <= 0.
double sample_rayleigh(SeededSampler& sampler, double sigma);

}  // namespace ionprobe::numerics
