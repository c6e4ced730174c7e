// config.hpp — Flat key/value run configuration for the command-line front end.

#pragma once

#include "floqfcs/crab.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace floqfcs {

enum class MachineKind { sinusoidal, crab, circular };
enum class OutputFormat { csv, json };
enum class SinusoidalWeights { three_channel, bessel };

// All keys of the flat config format; unknown keys are rejected.  See the
// README for the key reference.  Machine-specific fields are validated only
// for the machine actually selected.
struct RunConfig {
    MachineKind machine{MachineKind::sinusoidal};

    // physics
    double omega0{30.0};
    double beta_h{0.005};
    double beta_c{0.01};
    double gamma0{1.0};
    double Gamma{0.2};
    double delta_shift{3.0};
    double lambda{0.02};                 // sinusoidal
    double mu{1.0};                      // crab
    int crab_N{10};                      // crab
    double g{0.02};                      // circular
    SinusoidalWeights sinusoidal_weights{SinusoidalWeights::three_channel};

    // scan grid (Δ for modulated machines, Ω for the circular one)
    double scan_min{1.0};
    double scan_max{29.0};
    int scan_points{2};

    // crab optimization
    TurTarget target{TurTarget::R_h};
    int max_iters{2000};
    int restarts{8};
    double penalty{1e9};

    // monte-carlo validation
    std::uint64_t mc_n_jumps{10'000'000};
    std::uint64_t mc_burn_in{1000};

    std::uint64_t seed{1};

    // output
    std::string out{};
    OutputFormat format{OutputFormat::csv};

    bool operator==(const RunConfig&) const = default;
};

// Parses `key = value` lines ('#' comments, blank lines allowed).  Throws
// ConfigError on unknown keys, bad values, or violated invariants.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Emits every field in the same flat format; parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& config);

} // namespace floqfcs
