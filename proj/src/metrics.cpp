#include "floqfcs/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace floqfcs {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::engine: return "engine";
        case Regime::refrigerator: return "refrigerator";
        case Regime::accelerator: return "accelerator";
        case Regime::other: return "other";
    }
    return "other";
}

double delta_critical(double omega0, double beta_h, double beta_c) {
    if (!(beta_h < beta_c))
        throw std::invalid_argument("delta_critical: requires beta_h < beta_c");
    const double T_h = 1.0 / beta_h;
    const double T_c = 1.0 / beta_c;
    return omega0 * (T_h - T_c) / (T_h + T_c);
}

Regime classify_regime(const CumulantSet& c, double current_floor) {
    auto sign = [current_floor](double x) {
        if (std::abs(x) <= current_floor) return 0;
        return x > 0.0 ? 1 : -1;
    };
    const int sh = sign(c.J_h), sc = sign(c.J_c), sp = sign(c.P);
    if (sh > 0 && sc < 0 && sp < 0) return Regime::engine;
    if (sh < 0 && sc > 0 && sp > 0) return Regime::refrigerator;
    if (sh > 0 && sc < 0 && sp > 0) return Regime::accelerator;
    return Regime::other;
}

TurRatios tur_ratios(const CumulantSet& c, double current_floor) {
    TurRatios r;
    auto ratio = [&](double var, double mean) -> std::optional<double> {
        if (std::abs(mean) <= current_floor || mean == 0.0) return std::nullopt;
        return c.S_dot * var / (mean * mean);
    };
    r.R_h = ratio(c.var_h, c.J_h);
    r.R_c = ratio(c.var_c, c.J_c);
    r.R_P = ratio(c.var_P, c.P);
    return r;
}

std::optional<EfficiencyRatios> efficiency_fluctuation_ratios(const CumulantSet& c,
                                                              Regime regime,
                                                              double beta_h, double beta_c) {
    if (regime != Regime::engine && regime != Regime::refrigerator) return std::nullopt;

    EfficiencyRatios e;
    const double eta_C = 1.0 - beta_h / beta_c;
    e.eta_C_sq = eta_C * eta_C;
    const double eta_R = (1.0 - eta_C) / eta_C;
    e.eta_R_sq = eta_R * eta_R;
    if (regime == Regime::engine) {
        e.eta2 = c.var_P / c.var_h;
        e.eta_mean_sq = (c.P * c.P) / (c.J_h * c.J_h);
    } else {
        e.eta2 = c.var_c / c.var_P;
        e.eta_mean_sq = (c.J_c * c.J_c) / (c.P * c.P);
    }
    return e;
}

FluctuationGap relative_fluctuation_gap(const CumulantSet& c, double omega0, double Delta) {
    if (Delta <= 0.0)
        throw std::invalid_argument("relative_fluctuation_gap: Delta must be positive");
    if (c.J_h == 0.0 || c.J_c == 0.0 || c.P == 0.0)
        throw std::domain_error("relative_fluctuation_gap: undefined at vanishing currents");

    FluctuationGap g;
    g.computed = -2.0 * c.J_h * c.J_c / (c.P * c.P);
    g.analytic = 0.5 * (omega0 * omega0 / (Delta * Delta) - 1.0);
    g.product = g.computed * c.S_dot;
    return g;
}

MachineReport make_machine_report(const CumulantSet& c, double beta_h, double beta_c,
                                  double current_floor, double omega0, double Delta,
                                  bool with_gap) {
    MachineReport rep;
    rep.regime = classify_regime(c, current_floor);
    rep.tur = tur_ratios(c, current_floor);

    const double eta_C = 1.0 - beta_h / beta_c;
    rep.eta_C_sq = eta_C * eta_C;
    if (eta_C > 0.0) {
        const double eta_R = (1.0 - eta_C) / eta_C;
        rep.eta_R_sq = eta_R * eta_R;
    }

    if (auto e = efficiency_fluctuation_ratios(c, rep.regime, beta_h, beta_c)) {
        rep.eta2 = e->eta2;
        rep.eta_mean_sq = e->eta_mean_sq;
    }

    const bool currents_alive = std::abs(c.J_h) > current_floor &&
                                std::abs(c.J_c) > current_floor &&
                                std::abs(c.P) > current_floor;
    if (with_gap && currents_alive) {
        const FluctuationGap g = relative_fluctuation_gap(c, omega0, Delta);
        rep.D = g.computed;
        rep.D_S_dot = g.product;
    }
    return rep;
}

} // namespace floqfcs
