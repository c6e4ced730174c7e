#include "floqfcs/mc.hpp"
#include "floqfcs/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace floqfcs {

namespace {

void push_pair(std::vector<JumpChannel>& out, BathRole role,
               double weight, double g_down, double g_up, double omega) {
    if (weight * g_down > 0.0)
        out.push_back({0, 1, role, omega, weight * g_down});   // emission into bath
    if (weight * g_up > 0.0)
        out.push_back({1, 0, role, -omega, weight * g_up});    // absorption from bath
}

} // namespace

std::vector<JumpChannel> build_channels(const FloquetSpectrum& spectrum,
                                        const BathModel& hot, const BathModel& cold) {
    if (spectrum.channels.empty())
        throw std::invalid_argument("build_channels: empty Floquet spectrum");
    std::vector<JumpChannel> out;
    const BathModel* baths[2] = {&hot, &cold};
    for (const auto& ch : spectrum.channels) {
        for (int j = 0; j < 2; ++j)
            push_pair(out, baths[j]->role, ch.weight,
                      spectral_density(*baths[j], ch.omega),
                      spectral_density(*baths[j], -ch.omega), ch.omega);
    }
    return out;
}

std::vector<JumpChannel> build_channels(const CircularFloquet& cf,
                                        const BathModel& hot, const BathModel& cold) {
    const double s11 = cf.S11 * cf.S11;
    const double s12 = cf.S12p * cf.S12p;
    const double s21 = cf.S21p * cf.S21p;
    const double wm = cf.Omega - cf.Omega_R;
    const double wp = cf.Omega + cf.Omega_R;

    std::vector<JumpChannel> out;
    const BathModel* baths[2] = {&hot, &cold};
    for (int j = 0; j < 2; ++j) {
        const BathModel& b = *baths[j];
        // 0 → 1 transfers (row 1 gains): quanta wm emitted, wp absorbed.
        if (s12 * spectral_density(b, wm) > 0.0)
            out.push_back({0, 1, b.role, wm, s12 * spectral_density(b, wm)});
        if (s21 * spectral_density(b, -wp) > 0.0)
            out.push_back({0, 1, b.role, -wp, s21 * spectral_density(b, -wp)});
        // 1 → 0 transfers: quanta wm absorbed, wp emitted.
        if (s12 * spectral_density(b, -wm) > 0.0)
            out.push_back({1, 0, b.role, -wm, s12 * spectral_density(b, -wm)});
        if (s21 * spectral_density(b, wp) > 0.0)
            out.push_back({1, 0, b.role, wp, s21 * spectral_density(b, wp)});
        // State-preserving Ω-quanta exchange, same rates in both states.
        for (int state = 0; state < 2; ++state) {
            if (s11 * spectral_density(b, cf.Omega) > 0.0)
                out.push_back({state, state, b.role, cf.Omega,
                               s11 * spectral_density(b, cf.Omega)});
            if (s11 * spectral_density(b, -cf.Omega) > 0.0)
                out.push_back({state, state, b.role, -cf.Omega,
                               s11 * spectral_density(b, -cf.Omega)});
        }
    }
    return out;
}

SampledCumulants simulate_counting(const std::vector<JumpChannel>& channels,
                                   std::uint64_t n_jumps, std::uint64_t burn_in,
                                   std::uint64_t seed) {
    constexpr int kBatches = 50;
    if (n_jumps < 10 * kBatches)
        throw std::invalid_argument("simulate_counting: need at least 500 jumps");

    std::array<std::vector<const JumpChannel*>, 2> per_state;
    std::array<double, 2> total_rate{0.0, 0.0};
    for (const auto& ch : channels) {
        per_state[static_cast<std::size_t>(ch.from)].push_back(&ch);
        total_rate[static_cast<std::size_t>(ch.from)] += ch.rate;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int state = 1;

    auto step = [&](double* e_h, double* e_c) {
        const double rate = total_rate[static_cast<std::size_t>(state)];
        if (rate <= 0.0)
            throw AbsorbingStateError("simulate_counting: zero total rate in state " +
                                      std::to_string(state));
        double u = unit(rng);
        if (u <= 0.0) u = std::numeric_limits<double>::min();
        const double dt = -std::log(u) / rate;
        double pick = unit(rng) * rate;
        const JumpChannel* chosen = per_state[static_cast<std::size_t>(state)].back();
        for (const JumpChannel* ch : per_state[static_cast<std::size_t>(state)]) {
            pick -= ch->rate;
            if (pick <= 0.0) {
                chosen = ch;
                break;
            }
        }
        state = chosen->to;
        if (e_h && chosen->bath == BathRole::hot) *e_h += chosen->quantum;
        if (e_c && chosen->bath == BathRole::cold) *e_c += chosen->quantum;
        return dt;
    };

    for (std::uint64_t k = 0; k < burn_in; ++k) step(nullptr, nullptr);

    const std::uint64_t batch_len = n_jumps / kBatches;
    std::array<double, kBatches> be_h{}, be_c{}, btau{};
    for (int b = 0; b < kBatches; ++b) {
        double e_h = 0.0, e_c = 0.0, tau = 0.0;
        for (std::uint64_t k = 0; k < batch_len; ++k) tau += step(&e_h, &e_c);
        be_h[static_cast<std::size_t>(b)] = e_h;
        be_c[static_cast<std::size_t>(b)] = e_c;
        btau[static_cast<std::size_t>(b)] = tau;
    }

    double E_h = 0.0, E_c = 0.0, t_total = 0.0;
    for (int b = 0; b < kBatches; ++b) {
        E_h += be_h[static_cast<std::size_t>(b)];
        E_c += be_c[static_cast<std::size_t>(b)];
        t_total += btau[static_cast<std::size_t>(b)];
    }

    SampledCumulants out;
    out.n_jumps = static_cast<std::uint64_t>(batch_len) * kBatches;
    out.seed = seed;
    out.total_time = t_total;
    // Counters hold energy delivered to the baths; currents flow into the system.
    out.J_h = -E_h / t_total;
    out.J_c = -E_c / t_total;

    const double tau_bar = t_total / kBatches;
    double shh = 0.0, scc = 0.0, shc = 0.0;
    for (int b = 0; b < kBatches; ++b) {
        const double yh = -be_h[static_cast<std::size_t>(b)] - out.J_h * btau[static_cast<std::size_t>(b)];
        const double yc = -be_c[static_cast<std::size_t>(b)] - out.J_c * btau[static_cast<std::size_t>(b)];
        shh += yh * yh;
        scc += yc * yc;
        shc += yh * yc;
    }
    out.var_h = shh / (kBatches - 1) / tau_bar;
    out.var_c = scc / (kBatches - 1) / tau_bar;
    out.cov_hc = shc / (kBatches - 1) / tau_bar;

    out.se_J_h = std::sqrt(std::max(out.var_h, 0.0) / t_total);
    out.se_J_c = std::sqrt(std::max(out.var_c, 0.0) / t_total);
    const double chi2_spread = std::sqrt(2.0 / (kBatches - 1));
    out.se_var_h = out.var_h * chi2_spread;
    out.se_var_c = out.var_c * chi2_spread;
    out.se_cov_hc = std::sqrt(std::max(out.var_h * out.var_c, 0.0)) * chi2_spread;
    return out;
}

std::vector<ZScore> compare_with_analytic(const SampledCumulants& sampled,
                                          const CumulantSet& analytic) {
    auto entry = [](std::string name, double s, double a, double se, bool mean) {
        ZScore z;
        z.name = std::move(name);
        z.sampled = s;
        z.analytic = a;
        z.stderr_est = se;
        z.z = se > 0.0 ? (s - a) / se : 0.0;
        z.is_mean = mean;
        return z;
    };
    return {
        entry("J_h", sampled.J_h, analytic.J_h, sampled.se_J_h, true),
        entry("J_c", sampled.J_c, analytic.J_c, sampled.se_J_c, true),
        entry("var_h", sampled.var_h, analytic.var_h, sampled.se_var_h, false),
        entry("var_c", sampled.var_c, analytic.var_c, sampled.se_var_c, false),
    };
}

} // namespace floqfcs
