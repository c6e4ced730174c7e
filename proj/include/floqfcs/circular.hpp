// circular.hpp — Circularly driven qubit: Floquet diagonalization, secular
// tilted rate matrix, and its cumulants.

#pragma once

#include "floqfcs/bath.hpp"
#include "floqfcs/fcs.hpp"

#include <complex>

namespace floqfcs {

// Floquet data of H(t) = (ω0/2)σ_z + g(σ⁻ e^{iΩt} + σ⁺ e^{−iΩt}).  The kick
// operator P(t) = exp(−iΩt(σ_z+1)/2) leaves the σ_x matrix elements with
// only the first Fourier harmonics: S11/S22 are the diagonal coefficients,
// S12p/S21p (S12m/S21m) the off-diagonal ones at α = +1 (−1).  Coefficients
// are computed from the eigenvectors of the Floquet Hamiltonian directly;
// phases are fixed so the first nonzero eigenvector component is positive.
struct CircularFloquet {
    double omega0{0.0}, Omega{0.0}, g{0.0};
    double Delta_det{0.0};  // ω0 − Ω
    double Omega_R{0.0};    // √(Δ² + 4g²)
    double eps1{0.0}, eps2{0.0};
    double S11{0.0}, S22{0.0};
    double S12p{0.0}, S12m{0.0}, S21p{0.0}, S21m{0.0};
};

CircularFloquet floquet_diagonalize(double omega0, double Omega, double g);

// The four tilted rate-matrix elements of the secular Floquet master
// equation.  Quanta Ω ± Ω_R move population between the Floquet states;
// the diagonal Ω-quanta terms are state-preserving and vanish at χ = 0.
// Requires plain (non-split) Lorentzian baths.
TiltedGenerator circular_tilted_generator(const CircularFloquet& cf,
                                          const BathModel& hot, const BathModel& cold,
                                          std::complex<double> chi_h,
                                          std::complex<double> chi_c);

// Finite-difference cumulants of the circular machine (default route).
CumulantSet circular_cumulants(const CircularFloquet& cf,
                               const BathModel& hot, const BathModel& cold,
                               double step = 0.0);

// Closed-form counterpart via implicit differentiation; oracle pair of the
// finite-difference route.
CumulantSet circular_cumulants_analytic(const CircularFloquet& cf,
                                        const BathModel& hot, const BathModel& cold);

GeneratorDerivatives circular_generator_derivatives(const CircularFloquet& cf,
                                                    const BathModel& hot,
                                                    const BathModel& cold);

} // namespace floqfcs
