// crab.hpp — Derivative-free optimization of windowed Fourier pulses that
// minimizes a chosen TUR ratio at fixed modulation frequency.

#pragma once

#include "floqfcs/bath.hpp"
#include "floqfcs/fcs.hpp"
#include "floqfcs/metrics.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace floqfcs {

enum class TurTarget { R_h, R_c, R_P };

std::string to_string(TurTarget t);

struct OptimizationConfig {
    TurTarget target{TurTarget::R_h};
    double Delta{1.0};
    int harmonics{10};         // N
    double mu{1.0};
    int max_iters{2000};
    int restarts{8};
    std::uint64_t seed{0};
    double penalty_large{1e9};
};

struct OptimizedPulse {
    std::vector<std::pair<double, double>> coeffs;
    double objective_value{0.0};
    CumulantSet cumulants{};
    MachineReport report{};
    int iterations_used{0};
    int restart_index{0};
};

// Builds the windowed pulse, its Floquet spectrum and cumulants, and returns
// the target TUR ratio.  Dead currents, truncation failures, and degenerate
// machines all map to config.penalty_large instead of throwing.
double evaluate_objective(const std::vector<std::pair<double, double>>& coeffs,
                          const OptimizationConfig& config,
                          double omega0, const BathModel& hot, const BathModel& cold);

// Multistart Nelder–Mead search over the coefficient box [−1, 1]^{2N},
// deterministic for a given seed.  Throws NoFeasiblePulseError when every
// restart stays on the penalty plateau.
OptimizedPulse optimize_pulse(const OptimizationConfig& config,
                              double omega0, const BathModel& hot, const BathModel& cold);

// Deterministic stream derivation for seeds (splitmix64 mixing).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace floqfcs
