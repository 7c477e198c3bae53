#include "ionprobe/quantum.hpp"

#include <algorithm>
#include <cmath>

#include "ionprobe/numerics.hpp"

namespace ionprobe::quantum {

namespace {

constexpr double kShallowTrapVisibility = 5e-5;

// |<m| e^{i eta (a + a^dag)} |m + d>|^2 for d >= 0, in log form so that
// large factorial ratios stay finite.
double jump_probability(int lower, int delta, double eta2) {
    const double lag =
        numerics::assoc_laguerre(lower, delta, eta2);
    if (lag == 0.0) return 0.0;
    const double log_pre = -eta2 + delta * std::log(eta2) +
                           std::lgamma(lower + 1.0) -
                           std::lgamma(lower + delta + 1.0);
    return std::exp(log_pre) * lag * lag;
}

}  // namespace

double kick_overlap(int n, LambDicke eta) {
    const double e = eta.value();
    if (e == 0.0) return 1.0;
    const double x = 4.0 * e * e;
    return std::exp(-0.5 * x) * numerics::laguerre(n, x);
}

double mean_kick_overlap(const MotionalState& state, LambDicke eta) {
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, NumberState>) {
                return kick_overlap(s.n, eta);
            } else {
                return thermal_visibility(s.nbar, eta);
            }
        },
        state);
}

double travelling_wave_rate(double nbar, LambDicke eta, double rest_rate,
                            int basis_cutoff) {
    if (!(rest_rate >= 0.0) || !std::isfinite(rest_rate)) {
        throw std::invalid_argument("rest-frame rate must be non-negative");
    }
    if (basis_cutoff < 0) {
        throw std::invalid_argument("basis cutoff must be non-negative");
    }
    const int n_trunc = thermal_truncation(nbar);
    const double eta2 = eta.value() * eta.value();

    long double covered = 0.0L;
    for (int n = 0; n <= n_trunc; ++n) {
        const double weight = boltzmann_weight(n, nbar);
        long double row = 0.0L;
        if (eta2 == 0.0) {
            row = (n <= basis_cutoff) ? 1.0L : 0.0L;
        } else {
            for (int m = 0; m <= basis_cutoff; ++m) {
                const int lower = std::min(m, n);
                const int delta = std::abs(m - n);
                row += jump_probability(lower, delta, eta2);
            }
        }
        covered += weight * row;
    }

    const double deficit = static_cast<double>(1.0L - covered);
    const double rate = rest_rate * static_cast<double>(covered);
    if (deficit > 1e-6) {
        throw ConvergenceError(
            "travelling-wave basis cutoff leaves completeness deficit " +
                std::to_string(deficit),
            rate, deficit * rest_rate);
    }
    return rate;
}

double thermal_visibility(double nbar, LambDicke eta) {
    const double e = eta.value();
    if (e == 0.0) return 1.0;

    const int n_trunc = thermal_truncation(nbar);
    const double x = 4.0 * e * e;
    if (n_trunc == 0) return std::exp(-0.5 * x);

    // Single recurrence pass accumulating sum_n P(n) L_n(4 eta^2).
    const long double xl = x;
    const long double ratio = nbar / (nbar + 1.0);
    long double weight = 1.0L / (nbar + 1.0);  // P(0)
    long double prev = 1.0L;                   // L_0
    long double curr = 1.0L - xl;              // L_1
    long double acc = weight * prev;
    weight *= ratio;
    acc += weight * curr;
    for (int k = 1; k < n_trunc; ++k) {
        const long double next =
            ((2.0L * k + 1.0L - xl) * curr - static_cast<long double>(k) * prev) /
            (k + 1.0L);
        prev = curr;
        curr = next;
        weight *= ratio;
        acc += weight * curr;
    }
    return static_cast<double>(std::exp(-0.5L * xl) * acc);
}

double standing_wave_signal(double x0, double nbar, LambDicke eta, double k,
                            double rest_rate) {
    if (!(rest_rate >= 0.0) || !std::isfinite(rest_rate)) {
        throw std::invalid_argument("rest-frame rate must be non-negative");
    }
    if (k < 0.0 || !std::isfinite(k)) {
        throw std::invalid_argument("wavenumber must be non-negative");
    }
    const double v = thermal_visibility(nbar, eta);
    return 2.0 * rest_rate * (1.0 + v * std::cos(2.0 * k * x0));
}

double thermal_density_at(double x, double nbar, double sigma0) {
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) {
        throw std::invalid_argument("ground-state extent must be positive");
    }
    const int n_trunc = thermal_truncation(nbar);
    const double scale = sigma0 * std::sqrt(2.0);
    const double xi = x / scale;

    std::vector<double> psi(static_cast<std::size_t>(n_trunc) + 1);
    numerics::ho_wavefunctions(n_trunc, xi, psi);

    long double acc = 0.0L;
    for (int n = 0; n <= n_trunc; ++n) {
        acc += static_cast<long double>(boltzmann_weight(n, nbar)) * psi[n] *
               psi[n];
    }
    return static_cast<double>(acc) / scale;
}

std::vector<double> thermal_density(std::span<const double> x, double nbar,
                                    double sigma0) {
    std::vector<double> out;
    out.reserve(x.size());
    for (const double xi : x) {
        out.push_back(thermal_density_at(xi, nbar, sigma0));
    }
    return out;
}

WhichWayReport which_way_report(double nbar, LambDicke eta) {
    WhichWayReport report;
    report.nbar = nbar;
    report.eta = eta.value();

    const int n_trunc = thermal_truncation(nbar);
    const int listed = std::min(n_trunc, 32);
    report.overlaps.reserve(static_cast<std::size_t>(listed) + 1);
    for (int n = 0; n <= listed; ++n) {
        report.overlaps.push_back(kick_overlap(n, eta));
    }

    // The fringe visibility and the mean final-state overlap are the same
    // sum under two readings; report one number under both labels.
    report.thermal_average_overlap = thermal_visibility(nbar, eta);
    report.visibility = report.thermal_average_overlap;

    report.full_which_way =
        std::abs(report.visibility) < kShallowTrapVisibility;
    if (report.eta == 0.0) {
        report.interpretation =
            "no which-way information: recoil never changes the motional "
            "state, fringes at full contrast";
    } else if (report.full_which_way) {
        report.interpretation =
            "full which-way information: the recoil-kicked final states are "
            "nearly orthogonal (shallow-trap limit), fringes vanish";
    } else {
        report.interpretation =
            "partial which-way information: visibility equals the mean "
            "overlap of the two recoil-kicked final states";
    }
    return report;
}

}  // namespace ionprobe::quantum
