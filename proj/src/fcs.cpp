#include "floqfcs/fcs.hpp"
#include "floqfcs/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace floqfcs {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Per-bath channel sums.  down* weight the de-excitation rates G_j(ω_q),
// up* the excitation rates G_j(−ω_q); the suffix gives the power of ω_q.
struct ChannelSums {
    double total_down{0.0};  // A = Σ_{q,j} P_q G_j(ω_q)
    double total_up{0.0};    // B = Σ_{q,j} P_q G_j(−ω_q)
    double up1[2]{0.0, 0.0}, down1[2]{0.0, 0.0};
    double up2[2]{0.0, 0.0}, down2[2]{0.0, 0.0};
};

ChannelSums channel_sums(const FloquetSpectrum& spectrum,
                         const BathModel& hot, const BathModel& cold) {
    if (spectrum.channels.empty())
        throw std::invalid_argument("fcs: empty Floquet spectrum");
    ChannelSums s;
    const BathModel* baths[2] = {&hot, &cold};
    for (const auto& ch : spectrum.channels) {
        for (int j = 0; j < 2; ++j) {
            const double g_down = spectral_density(*baths[j], ch.omega);
            const double g_up = spectral_density(*baths[j], -ch.omega);
            const double pd = ch.weight * g_down;
            const double pu = ch.weight * g_up;
            s.total_down += pd;
            s.total_up += pu;
            s.down1[j] += pd * ch.omega;
            s.up1[j] += pu * ch.omega;
            s.down2[j] += pd * ch.omega * ch.omega;
            s.up2[j] += pu * ch.omega * ch.omega;
        }
    }
    return s;
}

CumulantSet assemble(double J_h, double J_c, double var_h, double var_c,
                     double lambda_hc, double beta_h, double beta_c) {
    CumulantSet c;
    c.J_h = J_h;
    c.J_c = J_c;
    c.P = -J_h - J_c;
    c.var_h = var_h;
    c.var_c = var_c;
    c.cov_hc = lambda_hc - J_h * J_c;
    c.var_P = var_h + var_c + 2.0 * c.cov_hc;
    c.S_dot = -beta_h * J_h - beta_c * J_c;
    return c;
}

} // namespace

TiltedGenerator tilted_generator(const FloquetSpectrum& spectrum,
                                 const BathModel& hot, const BathModel& cold,
                                 std::complex<double> chi_h, std::complex<double> chi_c) {
    if (spectrum.channels.empty())
        throw std::invalid_argument("tilted_generator: empty Floquet spectrum");

    TiltedGenerator gen{{}, {}, {}, {}, chi_h, chi_c};
    const BathModel* baths[2] = {&hot, &cold};
    const std::complex<double> chi[2] = {chi_h, chi_c};
    for (const auto& ch : spectrum.channels) {
        for (int j = 0; j < 2; ++j) {
            const double g_down = spectral_density(*baths[j], ch.omega);
            const double g_up = spectral_density(*baths[j], -ch.omega);
            const std::complex<double> down_phase = std::exp(-kI * ch.omega * chi[j]);
            const std::complex<double> up_phase = std::exp(kI * ch.omega * chi[j]);
            gen.l00 -= ch.weight * g_down;
            gen.l11 -= ch.weight * g_up;
            gen.l10 += ch.weight * g_down * down_phase;
            gen.l01 += ch.weight * g_up * up_phase;
        }
    }
    return gen;
}

std::complex<double> dominant_eigenvalue(const TiltedGenerator& gen) {
    const std::complex<double> tr = gen.l00 + gen.l11;
    const std::complex<double> disc =
        tr * tr - 4.0 * (gen.l00 * gen.l11 - gen.l01 * gen.l10);
    const double scale = std::abs(gen.l00) + std::abs(gen.l11) +
                         std::abs(gen.l01) + std::abs(gen.l10);
    if (disc.real() < 0.0 && std::abs(disc.imag()) < 1e-14 * scale * scale)
        throw BranchTrackingError("dominant_eigenvalue: discriminant on branch cut at chi_h=" +
                                  std::to_string(gen.chi_h.real()) + "+" +
                                  std::to_string(gen.chi_h.imag()) + "i");
    return 0.5 * (tr + std::sqrt(disc));
}

double steady_state_ratio(const FloquetSpectrum& spectrum,
                          const BathModel& hot, const BathModel& cold) {
    const ChannelSums s = channel_sums(spectrum, hot, cold);
    if (s.total_down <= 0.0)
        throw DegenerateSteadyStateError("steady_state_ratio: all de-excitation rates vanish");
    return s.total_up / s.total_down;
}

CumulantSet cumulants_analytic(const FloquetSpectrum& spectrum,
                               const BathModel& hot, const BathModel& cold) {
    const ChannelSums s = channel_sums(spectrum, hot, cold);
    const double A = s.total_down;
    const double B = s.total_up;
    const double R = A + B;
    if (R <= 0.0)
        throw DegenerateSteadyStateError("cumulants_analytic: all rates vanish");

    double J[2], var[2];
    for (int j = 0; j < 2; ++j) {
        J[j] = (A * s.up1[j] - B * s.down1[j]) / R;
        var[j] = (A * s.up2[j] + B * s.down2[j] - 2.0 * s.up1[j] * s.down1[j]) / R -
                 2.0 * J[j] * J[j] / R;
    }
    const double lambda_hc =
        (-s.up1[0] * s.down1[1] - s.up1[1] * s.down1[0] - 2.0 * J[0] * J[1]) / R;

    return assemble(J[0], J[1], var[0], var[1], lambda_hc, hot.beta, cold.beta);
}

CumulantSet cumulants_from_tilt_function(const std::function<double(double, double)>& lambda_of,
                                         double step, double beta_h, double beta_c) {
    if (step <= 0.0) throw std::invalid_argument("cumulants_numeric: step must be positive");

    const double lam0 = lambda_of(0.0, 0.0);  // ~0; kept in the stencil honestly
    auto first = [&](double e, int dir) {
        const double up = dir == 0 ? lambda_of(e, 0.0) : lambda_of(0.0, e);
        const double dn = dir == 0 ? lambda_of(-e, 0.0) : lambda_of(0.0, -e);
        return (up - dn) / (2.0 * e);
    };
    auto second = [&](double e, int dir) {
        const double up = dir == 0 ? lambda_of(e, 0.0) : lambda_of(0.0, e);
        const double dn = dir == 0 ? lambda_of(-e, 0.0) : lambda_of(0.0, -e);
        return (up - 2.0 * lam0 + dn) / (e * e);
    };
    auto mixed = [&](double e) {
        return (lambda_of(e, e) - lambda_of(e, -e) - lambda_of(-e, e) + lambda_of(-e, -e)) /
               (4.0 * e * e);
    };
    auto richardson = [](double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; };

    const double h = step;
    const double J_h = richardson(first(h, 0), first(0.5 * h, 0));
    const double J_c = richardson(first(h, 1), first(0.5 * h, 1));
    const double var_h = richardson(second(h, 0), second(0.5 * h, 0));
    const double var_c = richardson(second(h, 1), second(0.5 * h, 1));
    const double lambda_hc = richardson(mixed(h), mixed(0.5 * h));

    return assemble(J_h, J_c, var_h, var_c, lambda_hc, beta_h, beta_c);
}

CumulantSet cumulants_numeric(const FloquetSpectrum& spectrum,
                              const BathModel& hot, const BathModel& cold,
                              double step) {
    // Per-(channel, bath) rate table for a cancellation-free λ along real
    // tilts.  λ = ½(tr + √·) loses the cumulant signal underneath the rate
    // scale; the small root written as 2·det/(tr − √(tr² − 4·det)) with
    // det = −Σ_{a,b} U_a D_b expm1(ω_a u_a − ω_b u_b) keeps full relative
    // precision (pairs with equal phase cancel exactly instead of in fp).
    struct Term {
        double omega;
        int bath;
        double down, up;
    };
    std::vector<Term> terms;
    const BathModel* baths[2] = {&hot, &cold};
    double sum_down = 0.0, sum_up = 0.0;
    for (const auto& ch : spectrum.channels) {
        for (int j = 0; j < 2; ++j) {
            const double d = ch.weight * spectral_density(*baths[j], ch.omega);
            const double u = ch.weight * spectral_density(*baths[j], -ch.omega);
            if (d == 0.0 && u == 0.0) continue;
            terms.push_back({ch.omega, j, d, u});
            sum_down += d;
            sum_up += u;
        }
    }
    if (sum_down + sum_up <= 0.0)
        throw DegenerateSteadyStateError("cumulants_numeric: all rates vanish");
    const double tr = -(sum_down + sum_up);

    if (step <= 0.0) step = 1e-3 / std::abs(spectrum.omega_bar);
    // Real tilt u_j along the derivative direction z_j = iχ_j, i.e. χ = −iu.
    auto lambda_of = [&](double u_h, double u_c) {
        const double tilt[2] = {u_h, u_c};
        double det = 0.0;
        for (const Term& a : terms) {
            if (a.up == 0.0) continue;
            const double phase_a = a.omega * tilt[a.bath];
            for (const Term& b : terms) {
                if (b.down == 0.0) continue;
                det -= a.up * b.down * std::expm1(phase_a - b.omega * tilt[b.bath]);
            }
        }
        return 2.0 * det / (tr - std::sqrt(tr * tr - 4.0 * det));
    };
    return cumulants_from_tilt_function(lambda_of, step, hot.beta, cold.beta);
}

CumulantSet cumulants_sinusoidal_closed_form(double omega0, double lambda, double Delta,
                                             const BathModel& hot, const BathModel& cold) {
    const double u = omega0 + Delta;
    const double v = omega0 - Delta;
    const double Gh = spectral_density(hot, u);
    const double Gc = spectral_density(cold, v);
    const double x = std::exp(-hot.beta * u);
    const double y = std::exp(-cold.beta * v);
    const double S = Gh * (1.0 + x) + Gc * (1.0 + y);
    const double K = lambda * lambda / 4.0;

    if (S <= 0.0)
        throw DegenerateSteadyStateError("closed_form: both side channels decoupled");

    // Shared factors keep the relative-fluctuation identities exact:
    // J_h = u·j, J_c = −v·j, var_h = u²·w, var_c = v²·w, λ_hc = −uv·w.
    const double c0 = Gh * Gc * (x - y) / S;
    const double j = K * c0;
    const double m = K * Gh * Gc * (x + y) / S;
    const double w = m - 2.0 * K * c0 * c0 / S;

    return assemble(u * j, -v * j, u * u * w, v * v * w, -u * v * w, hot.beta, cold.beta);
}

GeneratorDerivatives modulated_generator_derivatives(const FloquetSpectrum& spectrum,
                                                     const BathModel& hot,
                                                     const BathModel& cold) {
    const ChannelSums s = channel_sums(spectrum, hot, cold);
    GeneratorDerivatives gd;
    gd.l00 = -s.total_down;
    gd.l11 = -s.total_up;
    gd.l10 = s.total_down;
    gd.l01 = s.total_up;
    for (int j = 0; j < 2; ++j) {
        gd.d_l01[j] = s.up1[j];
        gd.d_l10[j] = -s.down1[j];
        gd.dd_l01[j] = s.up2[j];
        gd.dd_l10[j] = s.down2[j];
    }
    gd.beta_h = hot.beta;
    gd.beta_c = cold.beta;
    return gd;
}

CumulantSet cumulants_from_derivatives(const GeneratorDerivatives& gd) {
    const double tr = gd.l00 + gd.l11;
    if (tr >= 0.0)
        throw DegenerateSteadyStateError("cumulants_from_derivatives: generator trace not negative");

    // Implicit differentiation of λ² − λ·tr + det = 0 at λ(0) = 0.
    double dtr[2], ddet[2], lam1[2];
    for (int j = 0; j < 2; ++j) {
        dtr[j] = gd.d_l00[j] + gd.d_l11[j];
        ddet[j] = gd.d_l00[j] * gd.l11 + gd.l00 * gd.d_l11[j] -
                  gd.d_l01[j] * gd.l10 - gd.l01 * gd.d_l10[j];
        lam1[j] = ddet[j] / tr;
    }

    auto second = [&](int a, int b) {
        // Per-element mixed derivatives vanish; diagonal second derivatives
        // enter only when a == b.  (The tr_uv term multiplies λ(0) = 0.)
        double ddet2 = gd.d_l00[a] * gd.d_l11[b] + gd.d_l00[b] * gd.d_l11[a] -
                       gd.d_l01[a] * gd.d_l10[b] - gd.d_l01[b] * gd.d_l10[a];
        if (a == b)
            ddet2 += gd.dd_l00[a] * gd.l11 + gd.l00 * gd.dd_l11[a] -
                     gd.dd_l01[a] * gd.l10 - gd.l01 * gd.dd_l10[a];
        return (2.0 * lam1[a] * lam1[b] - dtr[a] * lam1[b] - dtr[b] * lam1[a] + ddet2) / tr;
    };

    return assemble(lam1[0], lam1[1], second(0, 0), second(1, 1), second(0, 1),
                    gd.beta_h, gd.beta_c);
}

} // namespace floqfcs
