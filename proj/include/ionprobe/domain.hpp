#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ionprobe/errors.hpp"

namespace ionprobe {

namespace constants {
// CODATA-2018
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double planck = 6.62607015e-34;         // J s
inline constexpr double atomic_mass = 1.66053906660e-27; // kg
inline constexpr double pi = 3.14159265358979323846;
}  // namespace constants

/// k = 2 pi / lambda. Throws for lambda <= 0.
double wavenumber_from_wavelength(double wavelength);

/// Ground-state rms extent sigma0 = sqrt(hbar / (2 M Omega_t)).
double ground_state_extent(double mass, double omega_trap);

/// Thermal rms extent sigma0 * sqrt(2 nbar + 1).
double thermal_extent(double sigma0, double nbar);

/// Boltzmann weight P(n) = nbar^n / (nbar + 1)^(n+1).
double boltzmann_weight(int n, double nbar);

/// Smallest N whose geometric occupation tail beyond N is below 1e-12:
/// N = ceil(ln 1e-12 / ln(nbar/(nbar+1))), 0 for nbar = 0. Throws
/// CapacityError when N would exceed the order cap.
int thermal_truncation(double nbar);

/// One optical standing wave: wavelength, derived wavenumber, mean
/// detected signal level, and (informational) optical angular frequency.
/// All observables are averaged over times much longer than a trap
/// period, so omega never enters a signal formula.
class StandingWaveField {
public:
    StandingWaveField(double wavelength, double mean_signal,
                      double optical_omega = 0.0);

    double wavelength() const noexcept { return wavelength_; }
    double wavenumber() const noexcept { return wavenumber_; }
    double mean_signal() const noexcept { return mean_signal_; }
    double optical_omega() const noexcept { return optical_omega_; }

private:
    double wavelength_;
    double wavenumber_;
    double mean_signal_;
    double optical_omega_;
};

/// Harmonic trap plus thermal occupation; derived extents are computed
/// once at construction. Immutable value type.
class TrapState {
public:
    TrapState(double omega_trap, double mass, double nbar);

    /// Boundary-unit constructor: mass in amu, trap frequency as
    /// Omega_t / 2pi in MHz.
    static TrapState from_amu_mhz(double mass_amu, double trap_freq_mhz,
                                  double nbar);

    double omega_trap() const noexcept { return omega_trap_; }
    double mass() const noexcept { return mass_; }
    double nbar() const noexcept { return nbar_; }
    double ground_state_sigma() const noexcept { return sigma0_; }
    double thermal_sigma() const noexcept { return sigma_; }

private:
    double omega_trap_;
    double mass_;
    double nbar_;
    double sigma0_;
    double sigma_;
};

/// Lamb-Dicke parameter eta = k * sigma0: photon recoil length scale
/// relative to the ground-state wave packet.
class LambDicke {
public:
    explicit LambDicke(double eta);
    static LambDicke from(const StandingWaveField& field,
                          const TrapState& trap);

    double value() const noexcept { return eta_; }

private:
    double eta_;
};

/// Published parameter bundle for one of the three reference experiments.
struct ExperimentPreset {
    std::string name;
    double wavelength;            // m
    double ion_mass;              // kg
    double measured_visibility;   // dimensionless
    double published_sigma;       // m, upper limit on the rms extent
    double aberration_free_sigma; // m, 0 when not published
    double mirror_delay;          // s, 0 for the cavity setups
    std::string notes;
};

/// The three built-in presets, in registry order.
std::span<const ExperimentPreset> experiment_presets();

/// Lookup by name; throws std::invalid_argument for unknown names.
const ExperimentPreset& find_preset(std::string_view name);

/// Descriptive labels attached to a sampled scan.
struct ScanMetadata {
    std::string model;
    double wavenumber = 0.0;   // 1/m, 0 when unknown
    double mean_signal = 0.0;  // counts/s, 0 when unknown
    std::vector<std::pair<std::string, double>> extra;
};

/// Sampled detector signal versus probe position (trap center or mirror
/// distance). Positions must be strictly increasing and signals
/// non-negative.
class FringeSignal {
public:
    FringeSignal(std::vector<double> positions, std::vector<double> signals,
                 ScanMetadata metadata);

    std::span<const double> positions() const noexcept { return positions_; }
    std::span<const double> signals() const noexcept { return signals_; }
    const ScanMetadata& metadata() const noexcept { return metadata_; }
    std::size_t size() const noexcept { return positions_.size(); }

private:
    std::vector<double> positions_;
    std::vector<double> signals_;
    ScanMetadata metadata_;
};

}  // namespace ionprobe
