#include "ionprobe/domain.hpp"

#include <algorithm>
#include <cmath>

#include "ionprobe/numerics.hpp"

namespace ionprobe {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be positive");
    }
}

}  // namespace

double wavenumber_from_wavelength(double wavelength) {
    require_positive(wavelength, "wavelength");
    return 2.0 * constants::pi / wavelength;
}

double ground_state_extent(double mass, double omega_trap) {
    require_positive(mass, "mass");
    require_positive(omega_trap, "trap frequency");
    return std::sqrt(constants::hbar / (2.0 * mass * omega_trap));
}

double thermal_extent(double sigma0, double nbar) {
    require_positive(sigma0, "ground-state extent");
    if (nbar < 0.0 || !std::isfinite(nbar)) {
        throw std::invalid_argument("nbar must be non-negative");
    }
    return sigma0 * std::sqrt(2.0 * nbar + 1.0);
}

double boltzmann_weight(int n, double nbar) {
    if (n < 0) throw std::invalid_argument("n must be non-negative");
    if (nbar < 0.0 || !std::isfinite(nbar)) {
        throw std::invalid_argument("nbar must be non-negative");
    }
    if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
    // nbar^n / (nbar+1)^(n+1) in log form to stay finite at large n.
    return std::exp(n * std::log(nbar) - (n + 1.0) * std::log(nbar + 1.0));
}

int thermal_truncation(double nbar) {
    if (nbar < 0.0 || !std::isfinite(nbar)) {
        throw std::invalid_argument("nbar must be non-negative");
    }
    if (nbar == 0.0) return 0;
    const double ratio = nbar / (nbar + 1.0);
    const double n = std::ceil(std::log(1e-12) / std::log(ratio));
    if (n > numerics::kMaxOrder) {
        throw CapacityError(
            "thermal occupation too large: truncation order exceeds " +
            std::to_string(numerics::kMaxOrder));
    }
    return static_cast<int>(n);
}

StandingWaveField::StandingWaveField(double wavelength, double mean_signal,
                                     double optical_omega)
    : wavelength_(wavelength),
      wavenumber_(wavenumber_from_wavelength(wavelength)),
      mean_signal_(mean_signal),
      optical_omega_(optical_omega) {
    if (mean_signal < 0.0 || !std::isfinite(mean_signal)) {
        throw std::invalid_argument("mean signal must be non-negative");
    }
    if (optical_omega < 0.0 || !std::isfinite(optical_omega)) {
        throw std::invalid_argument("optical frequency must be non-negative");
    }
}

TrapState::TrapState(double omega_trap, double mass, double nbar)
    : omega_trap_(omega_trap),
      mass_(mass),
      nbar_(nbar),
      sigma0_(ground_state_extent(mass, omega_trap)),
      sigma_(thermal_extent(sigma0_, nbar)) {}

TrapState TrapState::from_amu_mhz(double mass_amu, double trap_freq_mhz,
                                  double nbar) {
    return TrapState(2.0 * constants::pi * trap_freq_mhz * 1e6,
                     mass_amu * constants::atomic_mass, nbar);
}

LambDicke::LambDicke(double eta) : eta_(eta) {
    if (!(eta >= 0.0) || !std::isfinite(eta)) {
        throw std::invalid_argument("Lamb-Dicke parameter must be >= 0");
    }
}

LambDicke LambDicke::from(const StandingWaveField& field,
                          const TrapState& trap) {
    return LambDicke(field.wavenumber() * trap.ground_state_sigma());
}

namespace {

const ExperimentPreset kPresets[] = {
    {
        "mirror-Ba493",
        493e-9,
        138.0 * constants::atomic_mass,
        0.72,
        32e-9,
        21e-9,
        1.7e-9,
        "fluorescence back-reflected onto the ion by a distant mirror; "
        "21 nm is the wave-packet size with optical aberrations excluded",
    },
    {
        "cavity-scatter-Ca397",
        397e-9,
        40.0 * constants::atomic_mass,
        0.40,
        43e-9,
        0.0,
        0.0,
        "ion scatters light coupled into a cavity; sigma is quoted in the "
        "rms convention (a sqrt(2)-larger convention is also in use)",
    },
    {
        "cavity-quadrupole-Ca729",
        729e-9,
        40.0 * constants::atomic_mass,
        0.963,
        16e-9,
        0.0,
        0.0,
        "quadrupole transition driven by cavity light; the fringe signal "
        "is an excitation probability",
    },
};

}  // namespace

std::span<const ExperimentPreset> experiment_presets() { return kPresets; }

const ExperimentPreset& find_preset(std::string_view name) {
    for (const auto& preset : kPresets) {
        if (preset.name == name) return preset;
    }
    throw std::invalid_argument("unknown preset '" + std::string(name) +
                                "'; see `preset list`");
}

FringeSignal::FringeSignal(std::vector<double> positions,
                           std::vector<double> signals, ScanMetadata metadata)
    : positions_(std::move(positions)),
      signals_(std::move(signals)),
      metadata_(std::move(metadata)) {
    if (positions_.size() != signals_.size()) {
        throw std::invalid_argument(
            "positions and signals must have equal length");
    }
    if (positions_.empty()) {
        throw std::invalid_argument("scan must contain at least one sample");
    }
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        if (!std::isfinite(positions_[i]) || !std::isfinite(signals_[i])) {
            throw std::invalid_argument("scan samples must be finite");
        }
        if (signals_[i] < 0.0) {
            throw std::invalid_argument("signals must be non-negative");
        }
        if (i > 0 && !(positions_[i] > positions_[i - 1])) {
            throw std::invalid_argument(
                "positions must be strictly increasing");
        }
    }
}

}  // namespace ionprobe
