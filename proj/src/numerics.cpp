#include "ionprobe/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace ionprobe::numerics {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
}

void require_order(int n) {
    if (n < 0) throw std::invalid_argument("order must be non-negative");
    if (n > kMaxOrder) {
        throw CapacityError("order " + std::to_string(n) +
                            " exceeds maximum " + std::to_string(kMaxOrder));
    }
}

// J0 power series sum_m (-1)^m (z^2/4)^m / (m!)^2. Extended precision keeps
// the cancellation error below 1e-12 up to the |z| = 16 crossover.
long double j0_series(long double x) {
    const long double q = 0.25L * x * x;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int m = 1; m <= 200; ++m) {
        term *= -q / (static_cast<long double>(m) * m);
        sum += term;
        if (std::abs(term) < 1e-22L * std::abs(sum) + 1e-24L) break;
    }
    return sum;
}

// Hankel expansion J0(x) = sqrt(2/(pi x)) [P cos w - Q sin w], w = x - pi/4,
// with P and Q summed to their smallest term.
long double j0_asymptotic(long double x) {
    const long double inv8x = 1.0L / (8.0L * x);
    const long double r = inv8x * inv8x;

    long double p_term = 1.0L;
    long double p_sum = 1.0L;
    for (int i = 1; i <= 40; ++i) {
        const long double a = 4.0L * i - 3.0L;
        const long double b = 4.0L * i - 1.0L;
        const long double next =
            -p_term * (a * a * b * b) * r /
            (static_cast<long double>(2 * i - 1) * (2 * i));
        if (std::abs(next) >= std::abs(p_term)) break;  // past smallest term
        p_term = next;
        p_sum += p_term;
        if (std::abs(p_term) < 1e-22L) break;
    }

    long double q_term = -inv8x;
    long double q_sum = q_term;
    for (int i = 1; i <= 40; ++i) {
        const long double a = 4.0L * i - 1.0L;
        const long double b = 4.0L * i + 1.0L;
        const long double next =
            -q_term * (a * a * b * b) * r /
            (static_cast<long double>(2 * i) * (2 * i + 1));
        if (std::abs(next) >= std::abs(q_term)) break;
        q_term = next;
        q_sum += q_term;
        if (std::abs(q_term) < 1e-22L) break;
    }

    const long double w = x - 0.25L * kPi;
    return std::sqrt(2.0L / (kPi * x)) *
           (p_sum * std::cos(w) - q_sum * std::sin(w));
}

}  // namespace

double bessel_j0(double z) {
    require_finite(z, "bessel_j0 argument");
    const long double x = std::abs(static_cast<long double>(z));
    const long double value = (x < 16.0L) ? j0_series(x) : j0_asymptotic(x);
    return static_cast<double>(value);
}

double assoc_laguerre(int n, int alpha, double z) {
    require_order(n);
    if (alpha < 0) throw std::invalid_argument("alpha must be non-negative");
    require_finite(z, "laguerre argument");

    // (k+1) L_{k+1}^a = (2k + a + 1 - z) L_k^a - (k + a) L_{k-1}^a
    const long double x = z;
    long double prev = 1.0L;
    if (n == 0) return 1.0;
    long double curr = 1.0L + alpha - x;
    for (int k = 1; k < n; ++k) {
        const long double next =
            ((2.0L * k + alpha + 1.0L - x) * curr - (k + alpha) * prev) /
            (k + 1.0L);
        prev = curr;
        curr = next;
    }
    return static_cast<double>(curr);
}

double laguerre(int n, double z) { return assoc_laguerre(n, 0, z); }

namespace {
// pi^(-1/4)
const double kGroundPeak = std::pow(3.14159265358979323846, -0.25);
}  // namespace

double ho_wavefunction(int n, double xi) {
    require_order(n);
    require_finite(xi, "oscillator coordinate");

    double prev = kGroundPeak * std::exp(-0.5 * xi * xi);
    if (n == 0) return prev;
    double curr = std::sqrt(2.0) * xi * prev;
    for (int k = 2; k <= n; ++k) {
        const double next = xi * std::sqrt(2.0 / k) * curr -
                            std::sqrt((k - 1.0) / k) * prev;
        prev = curr;
        curr = next;
    }
    return curr;
}

void ho_wavefunctions(int n_max, double xi, std::span<double> out) {
    require_order(n_max);
    require_finite(xi, "oscillator coordinate");
    if (out.size() != static_cast<std::size_t>(n_max) + 1) {
        throw std::invalid_argument("output span must hold n_max + 1 values");
    }
    out[0] = kGroundPeak * std::exp(-0.5 * xi * xi);
    if (n_max == 0) return;
    out[1] = std::sqrt(2.0) * xi * out[0];
    for (int k = 2; k <= n_max; ++k) {
        out[k] = xi * std::sqrt(2.0 / k) * out[k - 1] -
                 std::sqrt((k - 1.0) / k) * out[k - 2];
    }
}

namespace {

// 15-point Kronrod nodes on [0, 1] side of the symmetric rule, with the
// embedded 7-point Gauss weights (QUADPACK dqk15 constants).
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
    double a;
    double b;
    double value;
    double error;
};

struct SegmentOrder {
    bool operator()(const Segment& lhs, const Segment& rhs) const {
        return lhs.error < rhs.error;
    }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double values[15];
    auto eval = [&](double x) {
        const double y = f(x);
        if (!std::isfinite(y)) {
            throw std::invalid_argument("integrand is not finite at x = " +
                                        std::to_string(x));
        }
        return y;
    };

    const double fc = eval(center);
    values[7] = fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        values[i] = eval(center - dx);
        values[14 - i] = eval(center + dx);
    }

    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double pair = values[i] + values[14 - i];
        kronrod += kKronrodWeights[i] * pair;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
    }

    // QUADPACK-style error estimate based on the deviation of the
    // integrand from its mean.
    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[7] * std::abs(fc - mean);
    for (int i = 0; i < 7; ++i) {
        asc += kKronrodWeights[i] *
               (std::abs(values[i] - mean) + std::abs(values[14 - i] - mean));
    }
    asc *= std::abs(half);

    const double raw = std::abs(kronrod - gauss) * std::abs(half);
    double error = raw;
    if (asc != 0.0 && raw != 0.0) {
        error = asc * std::min(1.0, std::pow(200.0 * raw / asc, 1.5));
    }

    return Segment{a, b, kronrod * half, error};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
    if (!f) throw std::invalid_argument("integrand must be callable");
    require_finite(a, "integration bound");
    require_finite(b, "integration bound");
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
        throw std::invalid_argument("quadrature tolerances must be positive");
    }
    if (spec.max_subdivisions < 1) {
        throw std::invalid_argument("max_subdivisions must be >= 1");
    }
    if (a == b) return 0.0;

    double sign = 1.0;
    double lo = a;
    double hi = b;
    if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
    }

    std::priority_queue<Segment, std::vector<Segment>, SegmentOrder> queue;
    queue.push(gk15(f, lo, hi));

    double total_value = queue.top().value;
    double total_error = queue.top().error;

    for (int used = 0; used < spec.max_subdivisions; ++used) {
        if (total_error <=
            std::max(spec.abs_tol, spec.rel_tol * std::abs(total_value))) {
            return sign * total_value;
        }
        const Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gk15(f, worst.a, mid);
        const Segment right = gk15(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }

    if (total_error <=
        std::max(spec.abs_tol, spec.rel_tol * std::abs(total_value))) {
        return sign * total_value;
    }
    throw ConvergenceError(
        "quadrature did not reach the requested tolerance after " +
            std::to_string(spec.max_subdivisions) + " subdivisions",
        sign * total_value, total_error);
}

namespace {

// SplitMix64 output mix; full 64-bit avalanche.
std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

}  // namespace

double SeededSampler::next_uniform() noexcept {
    ++counter_;
    const std::uint64_t word =
        mix64(seed_ + counter_ * 0x9E3779B97F4A7C15ULL);
    // 53-bit mantissa shifted into (0, 1].
    return static_cast<double>((word >> 11) + 1) * 0x1.0p-53;
}

SeededSampler SeededSampler::split(std::uint64_t stream) const noexcept {
    return SeededSampler(mix64(seed_ ^ mix64(stream + 0x632BE59BD9B4E019ULL)));
}

double sample_rayleigh(SeededSampler& sampler, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("rayleigh sigma must be positive");
    }
    const double u = sampler.next_uniform();
    return sigma * std::sqrt(-2.0 * std::log(u));
}

}  // namespace ionprobe::numerics
