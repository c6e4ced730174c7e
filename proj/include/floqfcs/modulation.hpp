// modulation.hpp — Periodic frequency modulations ω(t) and their harmonic decomposition

#pragma once

#include <utility>
#include <vector>

namespace floqfcs {

enum class ModulationKind { constant, sinusoidal, crab };

// One period of the qubit frequency ω(t).
//   constant:    ω(t) = ω0
//   sinusoidal:  ω(t) = ω0 + λ Δ sin(Δ t)
//   crab:        ω(t) = ω0 + μ/(2N R(t)) Σ_n [a_n cos(2πnt/T) + b_n sin(2πnt/T)]
// with the boundary window 1/R(t) = sin²(πt/T), so the drive vanishes at
// t = 0 and t = T.  Δ is the modulation angular frequency, T = 2π/Δ.
struct ModulationSpec {
    ModulationKind kind{ModulationKind::constant};
    double omega0{1.0};
    double Delta{1.0};
    double lambda{0.0};                               // sinusoidal amplitude, 0 ≤ λ ≤ 1
    double mu{0.0};                                   // crab control strength
    std::vector<std::pair<double, double>> coeffs{};  // crab (a_n, b_n), each in [−1, 1]

    double period() const;

    static ModulationSpec constant(double omega0, double Delta);
    static ModulationSpec sinusoidal(double omega0, double lambda, double Delta);
    static ModulationSpec crab(double omega0, double Delta, double mu,
                               std::vector<std::pair<double, double>> coeffs);
};

// Sideband decomposition of exp(i ∫ (ω − ω̄)): channels at ω_q = ω̄ + qΔ with
// weights P_q = |η(q)|².  ω̄ is the period average of ω(t) (equals ω0 except
// for windowed crab pulses).
struct FloquetSpectrum {
    struct Channel {
        int q;
        double omega;   // ω̄ + qΔ, may be negative
        double weight;  // P_q ≥ 0
    };

    double omega_bar{0.0};
    double Delta{0.0};
    std::vector<Channel> channels;  // sorted by q, symmetric window around 0
    double total_weight{0.0};
};

// ω(t) for 0 ≤ t ≤ T.  Throws std::domain_error outside the period.
double omega_of_t(const ModulationSpec& spec, double t);

// Φ(t) = ∫₀ᵗ (ω(s) − ω̄) ds.  Closed form for constant/sinusoidal, composite
// Simpson quadrature for crab.  Φ(0) = Φ(T) = 0 up to quadrature error.
double phase_integral(const ModulationSpec& spec, double t);

// Period average ω̄ of ω(t).
double mean_frequency(const ModulationSpec& spec);

// Harmonic weights by discrete Fourier transform of exp(iΦ) on a uniform
// 4096-point grid.  The channel window grows symmetrically until
// Σ P_q ≥ 1 − weight_floor; throws TruncationError if the target cannot be
// reached within |q| < 2048.
FloquetSpectrum floquet_spectrum(const ModulationSpec& spec, double weight_floor = 1e-10);

// The weak-drive three-mode description of a sinusoidal modulation:
// q ∈ {−1, 0, +1} with P_0 = 1 − λ²/2 and P_±1 = λ²/4.
FloquetSpectrum sinusoidal_three_mode_spectrum(double omega0, double lambda, double Delta);

} // namespace floqfcs
