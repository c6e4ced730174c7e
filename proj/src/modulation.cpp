#include "floqfcs/modulation.hpp"
#include "floqfcs/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace floqfcs {

namespace {

constexpr int kSamples = 4096;   // grid points per period for the DFT
constexpr int kMaxHarmonic = kSamples / 2;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate(const ModulationSpec& s) {
    if (s.Delta <= 0.0) throw std::invalid_argument("modulation: Delta must be positive");
    if (s.kind == ModulationKind::sinusoidal && (s.lambda < 0.0 || s.lambda > 1.0))
        throw std::invalid_argument("modulation: lambda must lie in [0, 1]");
    if (s.kind == ModulationKind::crab) {
        if (s.coeffs.empty())
            throw std::invalid_argument("modulation: crab needs at least one harmonic");
        for (const auto& [a, b] : s.coeffs)
            if (std::abs(a) > 1.0 || std::abs(b) > 1.0)
                throw std::invalid_argument("modulation: crab coefficients must lie in [-1, 1]");
    }
}

void check_domain(const ModulationSpec& s, double t) {
    const double T = s.period();
    if (t < -1e-12 * T || t > T * (1.0 + 1e-12))
        throw std::domain_error("modulation: t outside [0, T]");
}

// Windowed truncated Fourier series evaluated at phase θ = 2πt/T.
double crab_drive(const ModulationSpec& s, double cos1, double sin1, double window) {
    const int n_harm = static_cast<int>(s.coeffs.size());
    double sum = 0.0;
    double ck = 1.0, sk = 0.0;  // cos/sin of k·θ, advanced by recurrence
    for (int k = 1; k <= n_harm; ++k) {
        const double c = ck * cos1 - sk * sin1;
        const double sn = sk * cos1 + ck * sin1;
        sum += s.coeffs[static_cast<std::size_t>(k - 1)].first * c +
               s.coeffs[static_cast<std::size_t>(k - 1)].second * sn;
        ck = c;
        sk = sn;
    }
    return s.mu / (2.0 * n_harm) * window * sum;
}

double crab_omega_at_phase(const ModulationSpec& s, double theta) {
    const double half = 0.5 * theta;
    const double w = std::sin(half) * std::sin(half);  // 1/R(t) = sin²(πt/T)
    return s.omega0 + crab_drive(s, std::cos(theta), std::sin(theta), w);
}

// Simpson integral of ω over [0, t] with n subintervals (n ≥ 1).
double crab_omega_integral(const ModulationSpec& s, double t, int n) {
    const double T = s.period();
    const double h = t / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t0 = h * i;
        const double f0 = crab_omega_at_phase(s, kTwoPi * t0 / T);
        const double fm = crab_omega_at_phase(s, kTwoPi * (t0 + 0.5 * h) / T);
        const double f1 = crab_omega_at_phase(s, kTwoPi * (t0 + h) / T);
        acc += h / 6.0 * (f0 + 4.0 * fm + f1);
    }
    return acc;
}

fftw_plan spectrum_plan() {
    static fftw_plan plan = nullptr;
    static std::once_flag once;
    std::call_once(once, [] {
        std::vector<std::complex<double>> buf(kSamples);
        plan = fftw_plan_dft_1d(kSamples,
                                reinterpret_cast<fftw_complex*>(buf.data()),
                                reinterpret_cast<fftw_complex*>(buf.data()),
                                FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    });
    return plan;
}

} // namespace

double ModulationSpec::period() const { return kTwoPi / Delta; }

ModulationSpec ModulationSpec::constant(double omega0, double Delta) {
    ModulationSpec s{ModulationKind::constant, omega0, Delta, 0.0, 0.0, {}};
    validate(s);
    return s;
}

ModulationSpec ModulationSpec::sinusoidal(double omega0, double lambda, double Delta) {
    ModulationSpec s{ModulationKind::sinusoidal, omega0, Delta, lambda, 0.0, {}};
    validate(s);
    return s;
}

ModulationSpec ModulationSpec::crab(double omega0, double Delta, double mu,
                                    std::vector<std::pair<double, double>> coeffs) {
    ModulationSpec s{ModulationKind::crab, omega0, Delta, 0.0, mu, std::move(coeffs)};
    validate(s);
    return s;
}

double omega_of_t(const ModulationSpec& spec, double t) {
    check_domain(spec, t);
    switch (spec.kind) {
        case ModulationKind::constant:
            return spec.omega0;
        case ModulationKind::sinusoidal:
            return spec.omega0 + spec.lambda * spec.Delta * std::sin(spec.Delta * t);
        case ModulationKind::crab:
            return crab_omega_at_phase(spec, kTwoPi * t / spec.period());
    }
    throw std::logic_error("modulation: unknown kind");
}

double mean_frequency(const ModulationSpec& spec) {
    if (spec.kind != ModulationKind::crab) return spec.omega0;
    // Rectangle rule on a uniform grid, exact for trigonometric polynomials.
    double acc = 0.0;
    for (int k = 0; k < kSamples; ++k)
        acc += crab_omega_at_phase(spec, kTwoPi * k / kSamples);
    return acc / kSamples;
}

double phase_integral(const ModulationSpec& spec, double t) {
    check_domain(spec, t);
    switch (spec.kind) {
        case ModulationKind::constant:
            return 0.0;
        case ModulationKind::sinusoidal:
            return spec.lambda * (1.0 - std::cos(spec.Delta * t));
        case ModulationKind::crab: {
            const int n = std::max(64, static_cast<int>(
                                           std::ceil(kSamples * t / spec.period())));
            return crab_omega_integral(spec, t, n) - mean_frequency(spec) * t;
        }
    }
    throw std::logic_error("modulation: unknown kind");
}

FloquetSpectrum floquet_spectrum(const ModulationSpec& spec, double weight_floor) {
    validate(spec);
    if (!(weight_floor > 0.0 && weight_floor < 1.0))
        throw std::invalid_argument("floquet_spectrum: weight_floor must lie in (0, 1)");

    const double T = spec.period();
    const double omega_bar = mean_frequency(spec);

    // Φ on the uniform grid t_k = kT/M.
    std::array<double, kSamples> phase{};
    switch (spec.kind) {
        case ModulationKind::constant:
            break;
        case ModulationKind::sinusoidal:
            for (int k = 0; k < kSamples; ++k)
                phase[static_cast<std::size_t>(k)] =
                    spec.lambda * (1.0 - std::cos(kTwoPi * k / kSamples));
            break;
        case ModulationKind::crab: {
            const double h = T / kSamples;
            double acc = 0.0;
            for (int k = 1; k < kSamples; ++k) {
                const double f0 = crab_omega_at_phase(spec, kTwoPi * (k - 1) / kSamples);
                const double fm = crab_omega_at_phase(spec, kTwoPi * (k - 0.5) / kSamples);
                const double f1 = crab_omega_at_phase(spec, kTwoPi * k / kSamples);
                acc += h / 6.0 * (f0 + 4.0 * fm + f1) - omega_bar * h;
                phase[static_cast<std::size_t>(k)] = acc;
            }
            break;
        }
    }

    std::vector<std::complex<double>> buf(kSamples);
    for (int k = 0; k < kSamples; ++k)
        buf[static_cast<std::size_t>(k)] = std::polar(1.0, phase[static_cast<std::size_t>(k)]);
    fftw_execute_dft(spectrum_plan(),
                     reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(buf.data()));

    auto weight_of = [&buf](int q) {
        const int bin = q >= 0 ? q : kSamples + q;
        const std::complex<double> eta = buf[static_cast<std::size_t>(bin)] / double(kSamples);
        return std::norm(eta);
    };

    const double target = 1.0 - weight_floor;
    double sum = weight_of(0);
    int window = 0;
    while (sum < target) {
        if (window + 1 >= kMaxHarmonic)
            throw TruncationError("floquet_spectrum: weight target not reached at q_max, "
                                  "achieved total weight " + std::to_string(sum), sum);
        ++window;
        sum += weight_of(window) + weight_of(-window);
    }

    FloquetSpectrum out;
    out.omega_bar = omega_bar;
    out.Delta = spec.Delta;
    out.total_weight = sum;
    out.channels.reserve(static_cast<std::size_t>(2 * window + 1));
    for (int q = -window; q <= window; ++q)
        out.channels.push_back({q, omega_bar + q * spec.Delta, weight_of(q)});
    return out;
}

FloquetSpectrum sinusoidal_three_mode_spectrum(double omega0, double lambda, double Delta) {
    if (Delta <= 0.0) throw std::invalid_argument("three_mode_spectrum: Delta must be positive");
    if (lambda < 0.0 || lambda > 1.0)
        throw std::invalid_argument("three_mode_spectrum: lambda must lie in [0, 1]");
    const double side = lambda * lambda / 4.0;
    FloquetSpectrum out;
    out.omega_bar = omega0;
    out.Delta = Delta;
    out.channels = {{-1, omega0 - Delta, side},
                    {0, omega0, 1.0 - lambda * lambda / 2.0},
                    {1, omega0 + Delta, side}};
    out.total_weight = 1.0;
    return out;
}

} // namespace floqfcs
