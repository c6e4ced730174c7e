// errors.hpp — Exception types for contract violations and numerical failures

#pragma once

#include <stdexcept>
#include <string>

namespace floqfcs {

// Spectrum truncation could not reach the requested weight target.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& msg, double achieved_weight)
        : std::runtime_error(msg), achieved_weight_(achieved_weight) {}
    double achieved_weight() const { return achieved_weight_; }

private:
    double achieved_weight_;
};

// Ambiguous square-root branch while following the dominant eigenvalue.
class BranchTrackingError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All transition rates vanish; the rate equation has no unique steady state.
class DegenerateSteadyStateError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Jump simulation reached a state with zero total outgoing rate.
class AbsorbingStateError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every optimizer restart ended on the penalty plateau.
class NoFeasiblePulseError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace floqfcs
