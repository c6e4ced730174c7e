// bath.hpp — Thermal bath spectral densities with KMS extension to negative frequency

#pragma once

#include <optional>

namespace floqfcs {

enum class BathRole { hot, cold };

// A thermal reservoir described by an inverse temperature and a Lorentzian
// spectral density.  When `split_at` is set the Lorentzian is cut at that
// frequency: the hot bath keeps only ω > split_at, the cold bath only
// ω < split_at (spectral separation).  Without `split_at` the plain
// Lorentzian γ0 Γ² / ((δ − ω)² + Γ²) is used on the whole positive axis.
struct BathModel {
    BathRole role{BathRole::hot};
    double beta{1.0};         // inverse temperature, 1/energy
    double gamma0{1.0};       // coupling strength (γ0 = 0 decouples the bath)
    double Gamma{0.2};        // Lorentzian half-width
    double delta_shift{0.0};  // peak offset δ
    std::optional<double> split_at{};

    static BathModel split_hot(double beta, double gamma0, double Gamma,
                               double delta_shift, double omega0);
    static BathModel split_cold(double beta, double gamma0, double Gamma,
                                double delta_shift, double omega0);
    static BathModel plain(BathRole role, double beta, double gamma0,
                           double Gamma, double delta_shift);
};

// G_j(ω) on the whole real line.  Negative frequencies follow the KMS
// condition G(−ω) = e^{−βω} G(ω) with this bath's own β.  At the split
// frequency itself both split variants return exactly 0 (strict cutoff).
double spectral_density(const BathModel& bath, double omega);

// G(−ω) − e^{−βω} G(ω) for ω > 0; zero by construction, kept as a self-test.
// Throws std::domain_error when G(ω) = 0 (undefined support).
double kms_residual(const BathModel& bath, double omega);

} // namespace floqfcs
