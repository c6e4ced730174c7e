// fcs.hpp — Counting-field statistics of the modulated two-level machine:
// tilted generator, dominant eigenvalue, and steady-state cumulants.

#pragma once

#include "floqfcs/bath.hpp"
#include "floqfcs/modulation.hpp"

#include <complex>
#include <functional>

namespace floqfcs {

// The 2×2 generator of the counting-field rate equation.  Column sums vanish
// at χ = 0; the sign convention counts energy entering the system from each
// bath (emission of ω into bath j carries the phase e^{−iωχ_j}).
struct TiltedGenerator {
    std::complex<double> l00, l01, l10, l11;
    std::complex<double> chi_h, chi_c;
};

// Steady-state rates: mean currents, their fluctuations, and derived power
// and entropy-production figures.  J > 0 means energy flowing into the
// system; P = −J_h − J_c is negative when the machine outputs work.
// cov_hc subtracts the product of mean currents from the mixed eigenvalue
// derivative, matching the convention the fluctuation identities are
// stated in; var_P = var_h + var_c + 2 cov_hc by construction.
struct CumulantSet {
    double J_h{0.0}, J_c{0.0}, P{0.0};
    double var_h{0.0}, var_c{0.0}, cov_hc{0.0}, var_P{0.0};
    double S_dot{0.0};
};

// Element values and derivatives of a tilted generator at χ = 0, taken along
// the imaginary-χ directions u_j = iχ_j.  Mixed per-element derivatives
// vanish because every term couples to a single bath.
struct GeneratorDerivatives {
    // [0] → hot direction, [1] → cold direction
    double l00{0.0}, l01{0.0}, l10{0.0}, l11{0.0};
    double d_l00[2]{0.0, 0.0}, d_l01[2]{0.0, 0.0}, d_l10[2]{0.0, 0.0}, d_l11[2]{0.0, 0.0};
    double dd_l00[2]{0.0, 0.0}, dd_l01[2]{0.0, 0.0}, dd_l10[2]{0.0, 0.0}, dd_l11[2]{0.0, 0.0};
    double beta_h{1.0}, beta_c{1.0};
};

TiltedGenerator tilted_generator(const FloquetSpectrum& spectrum,
                                 const BathModel& hot, const BathModel& cold,
                                 std::complex<double> chi_h, std::complex<double> chi_c);

// λ(χ) = ½(l00+l11) + ½√((l00+l11)² − 4(l00 l11 − l01 l10)), the branch that
// is 0 at χ = 0.  Along real tilts (purely imaginary χ) the discriminant is
// positive and λ is the Perron root.  Throws BranchTrackingError when the
// discriminant lands on the square-root cut with no continuous choice.
std::complex<double> dominant_eigenvalue(const TiltedGenerator& gen);

// w = l11/l00 at χ = 0, the steady-state population ratio.  Throws
// DegenerateSteadyStateError when all rates vanish.
double steady_state_ratio(const FloquetSpectrum& spectrum,
                          const BathModel& hot, const BathModel& cold);

// Closed-form cumulants from the signed channel sums (factorized products of
// single sums; valid for positive and negative ω_q via the KMS-extended G).
CumulantSet cumulants_analytic(const FloquetSpectrum& spectrum,
                               const BathModel& hot, const BathModel& cold);

// Cumulants by central finite differences of the dominant eigenvalue along
// real tilts, with one Richardson halving.  step ≤ 0 selects 1e-3/ω̄
// (roundoff-limited below that for weakly driven machines).
CumulantSet cumulants_numeric(const FloquetSpectrum& spectrum,
                              const BathModel& hot, const BathModel& cold,
                              double step = 0.0);

// Weak-drive sinusoidal machine evaluated directly from the three-mode
// expressions (fast path and independent oracle for cumulants_analytic).
CumulantSet cumulants_sinusoidal_closed_form(double omega0, double lambda, double Delta,
                                             const BathModel& hot, const BathModel& cold);

// Exact cumulants of any 2×2 tilted generator by implicit differentiation of
// its characteristic polynomial at λ(0) = 0.
CumulantSet cumulants_from_derivatives(const GeneratorDerivatives& gd);

// Derivative table of the modulated-machine generator (shared with tests).
GeneratorDerivatives modulated_generator_derivatives(const FloquetSpectrum& spectrum,
                                                     const BathModel& hot,
                                                     const BathModel& cold);

// FD driver shared with the circular machine: tilt ↦ λ(u_h, u_c).
CumulantSet cumulants_from_tilt_function(const std::function<double(double, double)>& lambda_of,
                                         double step, double beta_h, double beta_c);

} // namespace floqfcs
