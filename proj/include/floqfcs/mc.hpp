// mc.hpp — Stochastic jump-process oracle: Gillespie simulation of the χ = 0
// rate equation with per-bath energy counting.

#pragma once

#include "floqfcs/bath.hpp"
#include "floqfcs/circular.hpp"
#include "floqfcs/fcs.hpp"
#include "floqfcs/modulation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace floqfcs {

// State 0 is the level that de-excites at the G_j(ω_q) rates (matching the
// generator's row 0); state 1 gains from it.  `quantum` is the energy
// delivered TO the bath per jump (negative for absorption); self-loops
// (from == to) appear only for the circular machine's Ω-quanta channels.
struct JumpChannel {
    int from{0}, to{0};
    BathRole bath{BathRole::hot};
    double quantum{0.0};
    double rate{0.0};
};

struct SampledCumulants {
    double J_h{0.0}, J_c{0.0};           // into-system sign, as in CumulantSet
    double var_h{0.0}, var_c{0.0}, cov_hc{0.0};
    double se_J_h{0.0}, se_J_c{0.0};
    double se_var_h{0.0}, se_var_c{0.0}, se_cov_hc{0.0};
    double total_time{0.0};
    std::uint64_t n_jumps{0};
    std::uint64_t seed{0};
};

struct ZScore {
    std::string name;
    double sampled{0.0}, analytic{0.0}, stderr_est{0.0}, z{0.0};
    bool is_mean{false};
};

// Channels of the modulated machine: one (emit, absorb) pair per Floquet
// mode and bath; zero-rate channels are dropped.
std::vector<JumpChannel> build_channels(const FloquetSpectrum& spectrum,
                                        const BathModel& hot, const BathModel& cold);

// Channels of the circular machine, including the state-preserving Ω-quanta
// self-loops from the diagonal generator elements.
std::vector<JumpChannel> build_channels(const CircularFloquet& cf,
                                        const BathModel& hot, const BathModel& cold);

// Gillespie trajectory: `burn_in` unrecorded jumps, then `n_jumps` counted
// ones.  Means from total counters, fluctuations by batch means over 50
// batches.  Deterministic per seed.  Throws AbsorbingStateError if the
// current state has zero total rate.
SampledCumulants simulate_counting(const std::vector<JumpChannel>& channels,
                                   std::uint64_t n_jumps, std::uint64_t burn_in,
                                   std::uint64_t seed);

// z = (sampled − analytic)/stderr for the mean currents and the per-bath
// variances.  The mean entries carry the |z| ≤ 4 pass contract.
std::vector<ZScore> compare_with_analytic(const SampledCumulants& sampled,
                                          const CumulantSet& analytic);

} // namespace floqfcs
