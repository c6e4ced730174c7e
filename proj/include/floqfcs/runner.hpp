// runner.hpp — Scan drivers behind the CLI: parameter sweeps, CRAB
// optimization sweeps, Monte-Carlo validation, and tabular output.

#pragma once

#include "floqfcs/config.hpp"
#include "floqfcs/mc.hpp"
#include "floqfcs/metrics.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace floqfcs {

struct ScanRow {
    double var{0.0};  // scan variable: Δ (modulated) or Ω (circular)
    CumulantSet c{};  // zeros when the point is degenerate
    MachineReport report{};
};

struct CrabScanResult {
    std::vector<ScanRow> rows;
    std::vector<OptimizedPulse> pulses;  // same order as rows
};

struct ValidationRow {
    double var{0.0};
    std::vector<ZScore> scores;
};

// Grid of scan points, scan_min..scan_max inclusive.
std::vector<double> scan_grid(const RunConfig& config);

// Cumulants of the configured machine at one grid value.  Throws
// DegenerateSteadyStateError for fully decoupled points.
CumulantSet evaluate_machine(const RunConfig& config, double var);

// Full sweep; degenerate points become zero-current rows classified "other".
// Points are dispatched to a worker pool and emitted in grid order.
std::vector<ScanRow> run_scan(const RunConfig& config);

// Per-Δ CRAB optimization (machine = crab).  When `replay_archive` is given,
// coefficients are loaded from it instead of optimizing.
CrabScanResult run_crab_scan(const RunConfig& config,
                             const std::string& replay_archive = {});

// Monte-Carlo validation against the analytic cumulants at each grid point;
// `pass` is false when any mean-current |z| exceeds 4.
std::pair<std::vector<ValidationRow>, bool> run_validate(const RunConfig& config);

// Stable 19-column schema; identical inputs yield byte-identical output.
extern const char* const kCsvHeader;
std::string rows_to_csv(const std::vector<ScanRow>& rows);
std::string rows_to_json(const std::vector<ScanRow>& rows);

std::string pulses_to_json(const RunConfig& config, const CrabScanResult& result);
std::string validation_to_csv(const std::vector<ValidationRow>& rows);

} // namespace floqfcs
