#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ionprobe/domain.hpp"

namespace ionprobe::quantum {

/// Motional preparation: a single number state or a thermal mixture
/// (truncated per the geometric-tail rule).
struct NumberState {
    int n;
};
struct ThermalMixture {
    double nbar;
};
using MotionalState = std::variant<NumberState, ThermalMixture>;

/// Overlap <n| e^{2ikx} |n> of the two recoil-kicked final states,
/// real by parity: e^{-2 eta^2} L_n(4 eta^2). This equals
/// <n| cos(2kx) |n>, the visibility contribution of state |n>.
double kick_overlap(int n, LambDicke eta);

/// Thermally averaged overlap for either kind of motional state.
double mean_kick_overlap(const MotionalState& state, LambDicke eta);

/// Total rate for scattering out of a single travelling wave,
/// S_rest * sum_n P(n) sum_m |<m| e^{ikx} |n>|^2. Completeness makes the
/// double sum 1 exactly; the computed value probes how well basis_cutoff
/// exhausts it. Throws ConvergenceError (carrying the measured deficit)
/// when the completeness deficit exceeds 1e-6.
double travelling_wave_rate(double nbar, LambDicke eta, double rest_rate,
                            int basis_cutoff);

/// Standing-wave scattering rate at trap position x0:
/// 2 S_rest (1 + V cos 2kx0) with V the thermal visibility.
double standing_wave_signal(double x0, double nbar, LambDicke eta, double k,
                            double rest_rate);

/// Thermal fringe visibility sum_n P(n) <n|e^{2ikx}|n>, truncated by the
/// geometric-tail rule; equals exp(-2 eta^2 (2 nbar + 1)).
double thermal_visibility(double nbar, LambDicke eta);

/// Thermal spatial density sum_n P(n) |psi_n(x)|^2 at x (meters), for a
/// trap with ground-state extent sigma0.
double thermal_density_at(double x, double nbar, double sigma0);

/// Grid evaluation of thermal_density_at.
std::vector<double> thermal_density(std::span<const double> x, double nbar,
                                    double sigma0);

/// Which-way summary: per-state overlaps, their thermal average, and the
/// visibility (the same number under its two readings).
struct WhichWayReport {
    double nbar;
    double eta;
    std::vector<double> overlaps;  // n = 0 .. min(truncation, 32)
    double thermal_average_overlap;
    double visibility;  // == thermal_average_overlap by construction
    bool full_which_way;  // visibility below the shallow-trap threshold
    std::string interpretation;
};

WhichWayReport which_way_report(double nbar, LambDicke eta);

}  // namespace ionprobe::quantum
