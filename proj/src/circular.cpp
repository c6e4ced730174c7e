#include "floqfcs/circular.hpp"
#include "floqfcs/errors.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace floqfcs {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void require_plain(const BathModel& b, const char* who) {
    if (b.split_at)
        throw std::invalid_argument(std::string(who) + ": circular machine expects plain baths");
}

// Normalized eigenvector of ((−Δ/2, g), (g, Δ/2)) for eigenvalue −Ω_R/2,
// using whichever algebraic form stays away from 0/0 as g → 0.
std::array<double, 2> ground_eigenvector(double Delta_det, double g, double Omega_R) {
    double v0, v1;
    if (Delta_det >= 0.0) {
        v0 = 0.5 * (Delta_det + Omega_R);
        v1 = -g;
    } else {
        v0 = g;
        v1 = 0.5 * (Delta_det - Omega_R);
    }
    double n = std::hypot(v0, v1);
    if (n == 0.0) {  // fully degenerate point Δ = g = 0
        v0 = 1.0;
        v1 = 0.0;
        n = 1.0;
    }
    if (v0 < 0.0 || (v0 == 0.0 && v1 < 0.0)) n = -n;
    return {v0 / n, v1 / n};
}

} // namespace

CircularFloquet floquet_diagonalize(double omega0, double Omega, double g) {
    if (g < 0.0) throw std::invalid_argument("floquet_diagonalize: g must be non-negative");
    if (Omega <= 0.0) throw std::invalid_argument("floquet_diagonalize: Omega must be positive");

    CircularFloquet cf;
    cf.omega0 = omega0;
    cf.Omega = Omega;
    cf.g = g;
    cf.Delta_det = omega0 - Omega;
    cf.Omega_R = std::hypot(cf.Delta_det, 2.0 * g);
    cf.eps1 = 0.5 * (-Omega - cf.Omega_R);
    cf.eps2 = 0.5 * (-Omega + cf.Omega_R);

    const auto [a1, b1] = ground_eigenvector(cf.Delta_det, g, cf.Omega_R);
    // Orthogonal partner, phase-fixed the same way.
    double a2 = -b1, b2 = a1;
    if (a2 < 0.0 || (a2 == 0.0 && b2 < 0.0)) {
        a2 = -a2;
        b2 = -b2;
    }

    // ⟨φ_k(t)|σ_x|φ_j(t)⟩ = a_k b_j e^{−iΩt} + b_k a_j e^{iΩt}
    cf.S11 = b1 * a1;
    cf.S22 = b2 * a2;
    cf.S12p = b1 * a2;
    cf.S12m = a1 * b2;
    cf.S21p = b2 * a1;
    cf.S21m = a2 * b1;
    return cf;
}

TiltedGenerator circular_tilted_generator(const CircularFloquet& cf,
                                          const BathModel& hot, const BathModel& cold,
                                          std::complex<double> chi_h,
                                          std::complex<double> chi_c) {
    require_plain(hot, "circular_tilted_generator");
    require_plain(cold, "circular_tilted_generator");

    const double s11 = cf.S11 * cf.S11;
    const double s12 = cf.S12p * cf.S12p;
    const double s21 = cf.S21p * cf.S21p;
    const double wm = cf.Omega - cf.Omega_R;  // may be negative
    const double wp = cf.Omega + cf.Omega_R;

    TiltedGenerator gen{{}, {}, {}, {}, chi_h, chi_c};
    const BathModel* baths[2] = {&hot, &cold};
    const std::complex<double> chi[2] = {chi_h, chi_c};
    for (int j = 0; j < 2; ++j) {
        const double gO = spectral_density(*baths[j], cf.Omega);
        const double gOm = spectral_density(*baths[j], -cf.Omega);
        const std::complex<double> diag =
            gO * (std::exp(-kI * cf.Omega * chi[j]) - 1.0) +
            gOm * (std::exp(kI * cf.Omega * chi[j]) - 1.0);
        gen.l00 += s11 * diag;
        gen.l11 += s11 * diag;  // |S22|² = |S11|²

        const double g_wm = spectral_density(*baths[j], wm);
        const double g_mwm = spectral_density(*baths[j], -wm);
        const double g_wp = spectral_density(*baths[j], wp);
        const double g_mwp = spectral_density(*baths[j], -wp);

        gen.l00 -= s12 * g_wm + s21 * g_mwp;
        gen.l11 -= s12 * g_mwm + s21 * g_wp;
        gen.l01 += s12 * g_mwm * std::exp(kI * wm * chi[j]) +
                   s21 * g_wp * std::exp(-kI * wp * chi[j]);
        gen.l10 += s12 * g_wm * std::exp(-kI * wm * chi[j]) +
                   s21 * g_mwp * std::exp(kI * wp * chi[j]);
    }
    return gen;
}

GeneratorDerivatives circular_generator_derivatives(const CircularFloquet& cf,
                                                    const BathModel& hot,
                                                    const BathModel& cold) {
    require_plain(hot, "circular_generator_derivatives");
    require_plain(cold, "circular_generator_derivatives");

    const double s11 = cf.S11 * cf.S11;
    const double s12 = cf.S12p * cf.S12p;
    const double s21 = cf.S21p * cf.S21p;
    const double wm = cf.Omega - cf.Omega_R;
    const double wp = cf.Omega + cf.Omega_R;

    GeneratorDerivatives gd;
    gd.beta_h = hot.beta;
    gd.beta_c = cold.beta;
    const BathModel* baths[2] = {&hot, &cold};
    for (int j = 0; j < 2; ++j) {
        const double gO = spectral_density(*baths[j], cf.Omega);
        const double gOm = spectral_density(*baths[j], -cf.Omega);
        const double g_wm = spectral_density(*baths[j], wm);
        const double g_mwm = spectral_density(*baths[j], -wm);
        const double g_wp = spectral_density(*baths[j], wp);
        const double g_mwp = spectral_density(*baths[j], -wp);

        gd.l00 += -(s12 * g_wm + s21 * g_mwp);
        gd.l11 += -(s12 * g_mwm + s21 * g_wp);
        gd.l01 += s12 * g_mwm + s21 * g_wp;
        gd.l10 += s12 * g_wm + s21 * g_mwp;

        // d/d(iχ_j): e^{−iωχ} terms pull down −ω, e^{+iωχ} terms +ω.
        const double diag1 = cf.Omega * (gOm - gO);
        const double diag2 = cf.Omega * cf.Omega * (gOm + gO);
        gd.d_l00[j] = s11 * diag1;
        gd.d_l11[j] = s11 * diag1;
        gd.dd_l00[j] = s11 * diag2;
        gd.dd_l11[j] = s11 * diag2;

        gd.d_l01[j] = s12 * g_mwm * wm - s21 * g_wp * wp;
        gd.d_l10[j] = -s12 * g_wm * wm + s21 * g_mwp * wp;
        gd.dd_l01[j] = s12 * g_mwm * wm * wm + s21 * g_wp * wp * wp;
        gd.dd_l10[j] = s12 * g_wm * wm * wm + s21 * g_mwp * wp * wp;
    }
    return gd;
}

CumulantSet circular_cumulants_analytic(const CircularFloquet& cf,
                                        const BathModel& hot, const BathModel& cold) {
    return cumulants_from_derivatives(circular_generator_derivatives(cf, hot, cold));
}

CumulantSet circular_cumulants(const CircularFloquet& cf,
                               const BathModel& hot, const BathModel& cold,
                               double step) {
    require_plain(hot, "circular_cumulants");
    require_plain(cold, "circular_cumulants");
    if (step <= 0.0) step = 1e-3 / std::abs(cf.omega0);

    // Stable small-root evaluation along real tilts.  With l00 = a00 + D(z),
    // l11 = a11 + D(z) (equal window terms) and the off-diagonal sums l01,
    // l10, the products of the z = 0 values cancel algebraically:
    //   det = D(a00 + a11) + D² − Σ_{a,b} c_a c'_b expm1(p_a z_a + p'_b z_b),
    // so λ = 2 det / (tr − √(tr² − 4 det)) keeps full relative precision.
    const double s11 = cf.S11 * cf.S11;
    const double s12 = cf.S12p * cf.S12p;
    const double s21 = cf.S21p * cf.S21p;
    const double wm = cf.Omega - cf.Omega_R;
    const double wp = cf.Omega + cf.Omega_R;

    struct Line {
        double c;   // rate factor
        double p;   // tilt exponent slope
        int bath;
    };
    std::vector<Line> up, down;  // l01 and l10 summands
    double a00 = 0.0, a11 = 0.0;
    double gO[2], gOm[2];
    const BathModel* baths[2] = {&hot, &cold};
    for (int j = 0; j < 2; ++j) {
        gO[j] = s11 * spectral_density(*baths[j], cf.Omega);
        gOm[j] = s11 * spectral_density(*baths[j], -cf.Omega);
        const double g_wm = spectral_density(*baths[j], wm);
        const double g_mwm = spectral_density(*baths[j], -wm);
        const double g_wp = spectral_density(*baths[j], wp);
        const double g_mwp = spectral_density(*baths[j], -wp);
        a00 -= s12 * g_wm + s21 * g_mwp;
        a11 -= s12 * g_mwm + s21 * g_wp;
        up.push_back({s12 * g_mwm, wm, j});
        up.push_back({s21 * g_wp, -wp, j});
        down.push_back({s12 * g_wm, -wm, j});
        down.push_back({s21 * g_mwp, wp, j});
    }
    if (a00 + a11 >= 0.0)
        throw DegenerateSteadyStateError("circular_cumulants: all transfer rates vanish");

    auto lambda_of = [&](double u_h, double u_c) {
        const double tilt[2] = {u_h, u_c};
        double window = 0.0;
        for (int j = 0; j < 2; ++j)
            window += gO[j] * std::expm1(-cf.Omega * tilt[j]) +
                      gOm[j] * std::expm1(cf.Omega * tilt[j]);
        double det = window * (a00 + a11) + window * window;
        for (const Line& a : up)
            for (const Line& b : down)
                det -= a.c * b.c * std::expm1(a.p * tilt[a.bath] + b.p * tilt[b.bath]);
        const double tr = a00 + a11 + 2.0 * window;
        return 2.0 * det / (tr - std::sqrt(tr * tr - 4.0 * det));
    };
    return cumulants_from_tilt_function(lambda_of, step, hot.beta, cold.beta);
}

} // namespace floqfcs
