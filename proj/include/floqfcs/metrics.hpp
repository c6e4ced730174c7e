// metrics.hpp — Regime classification, TUR ratios, efficiency-fluctuation
// ratios, and the relative-fluctuation gap.

#pragma once

#include "floqfcs/fcs.hpp"

#include <optional>
#include <string>

namespace floqfcs {

enum class Regime { engine, refrigerator, accelerator, other };

std::string to_string(Regime r);

struct TurRatios {
    std::optional<double> R_h, R_c, R_P;
};

struct EfficiencyRatios {
    double eta2{0.0};         // η⁽²⁾: var ratio of output over input fluctuations
    double eta_mean_sq{0.0};  // ⟨η⟩² from mean currents
    double eta_C_sq{0.0};     // (1 − β_h/β_c)²
    double eta_R_sq{0.0};     // ((1 − η_C)/η_C)²
};

struct FluctuationGap {
    double computed{0.0};  // var_P/P² − var_h/J_h², evaluated in reduced form
    double analytic{0.0};  // ½(ω0²/Δ² − 1)
    double product{0.0};   // computed · ⟨Ṡ⟩
};

struct MachineReport {
    Regime regime{Regime::other};
    TurRatios tur{};
    std::optional<double> eta2{}, eta_mean_sq{};
    double eta_C_sq{0.0}, eta_R_sq{0.0};
    std::optional<double> D{}, D_S_dot{};
};

// Δ_cr = ω0 (T_h − T_c)/(T_h + T_c); requires β_h < β_c.
double delta_critical(double omega0, double beta_h, double beta_c);

// Sign pattern of (J_h, J_c, P); currents below current_floor count as zero.
Regime classify_regime(const CumulantSet& c, double current_floor = 0.0);

// R_j = ⟨Ṡ⟩ var_j / ⟨J_j⟩²; entries with |mean| ≤ current_floor stay empty.
TurRatios tur_ratios(const CumulantSet& c, double current_floor = 0.0);

// Engine: η⁽²⁾ = var_P/var_h, ⟨η⟩² = P²/J_h².  Refrigerator: η⁽²⁾ =
// var_c/var_P, ⟨η⟩² = J_c²/P².  Empty for accelerator/other regimes.
std::optional<EfficiencyRatios> efficiency_fluctuation_ratios(const CumulantSet& c,
                                                              Regime regime,
                                                              double beta_h, double beta_c);

// The gap D is evaluated through the algebraic reduction −2 J_h J_c / P²,
// which equals var_P/P² − var_h/J_h² exactly for single-line-per-bath
// spectral separation (the literal ratio difference cancels ~10 digits and
// cannot resolve D in double precision).  Throws on vanishing currents.
FluctuationGap relative_fluctuation_gap(const CumulantSet& c, double omega0, double Delta);

// Everything above in one record, as emitted by the scan drivers.
// with_gap enables the D columns (sinusoidal split-bath machines).
MachineReport make_machine_report(const CumulantSet& c, double beta_h, double beta_c,
                                  double current_floor, double omega0, double Delta,
                                  bool with_gap);

} // namespace floqfcs
