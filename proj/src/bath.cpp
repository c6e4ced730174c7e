#include "floqfcs/bath.hpp"

#include <cmath>
#include <stdexcept>

namespace floqfcs {

namespace {

void validate(const BathModel& b) {
    if (b.beta <= 0.0) throw std::invalid_argument("bath: beta must be positive");
    if (b.gamma0 < 0.0) throw std::invalid_argument("bath: gamma0 must be non-negative");
    if (b.Gamma <= 0.0) throw std::invalid_argument("bath: Gamma must be positive");
}

double lorentzian(const BathModel& b, double omega, double center) {
    const double d = omega - center;
    return b.gamma0 * b.Gamma * b.Gamma / (d * d + b.Gamma * b.Gamma);
}

} // namespace

BathModel BathModel::split_hot(double beta, double gamma0, double Gamma,
                               double delta_shift, double omega0) {
    BathModel b{BathRole::hot, beta, gamma0, Gamma, delta_shift, omega0};
    validate(b);
    return b;
}

BathModel BathModel::split_cold(double beta, double gamma0, double Gamma,
                                double delta_shift, double omega0) {
    BathModel b{BathRole::cold, beta, gamma0, Gamma, delta_shift, omega0};
    validate(b);
    return b;
}

BathModel BathModel::plain(BathRole role, double beta, double gamma0,
                           double Gamma, double delta_shift) {
    BathModel b{role, beta, gamma0, Gamma, delta_shift, std::nullopt};
    validate(b);
    return b;
}

double spectral_density(const BathModel& bath, double omega) {
    if (omega < 0.0)
        return spectral_density(bath, -omega) * std::exp(bath.beta * omega);

    if (bath.split_at) {
        const double omega0 = *bath.split_at;
        // ε → 0⁺ cutoff: both baths vanish at ω = ω0 exactly.
        if (bath.role == BathRole::hot) {
            if (omega <= omega0) return 0.0;
        } else {
            if (omega >= omega0) return 0.0;
        }
        return lorentzian(bath, omega, omega0 + bath.delta_shift);
    }
    return lorentzian(bath, omega, bath.delta_shift);
}

double kms_residual(const BathModel& bath, double omega) {
    if (omega <= 0.0) throw std::domain_error("kms_residual: omega must be positive");
    const double g = spectral_density(bath, omega);
    if (g == 0.0) throw std::domain_error("kms_residual: G(omega) = 0, undefined support");
    return spectral_density(bath, -omega) - std::exp(-bath.beta * omega) * g;
}

} // namespace floqfcs
