// Command-line front end: parameter scans, CRAB optimization sweeps, and
// Monte-Carlo validation with flat-file configs and CSV/JSON output.

#include "floqfcs/errors.hpp"
#include "floqfcs/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitValidation = 3;

struct CommonOpts {
    std::string config_path;
    std::string out_override;
    std::string format_override;
    std::uint64_t seed_override = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "flat key=value configuration file")
        ->required();
    cmd->add_option("--out", opts.out_override, "output path (overrides config)");
    cmd->add_option("--format", opts.format_override, "csv or json (overrides config)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", opts.seed_override, "seed (overrides config)")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
}

floqfcs::RunConfig load(const CommonOpts& opts) {
    floqfcs::RunConfig config = floqfcs::parse_config_file(opts.config_path);
    if (!opts.out_override.empty()) config.out = opts.out_override;
    if (!opts.format_override.empty())
        config.format = opts.format_override == "json" ? floqfcs::OutputFormat::json
                                                       : floqfcs::OutputFormat::csv;
    if (opts.seed_set) config.seed = opts.seed_override;
    return config;
}

void emit(const floqfcs::RunConfig& config, const std::string& text) {
    if (config.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(config.out, std::ios::binary);
    if (!out) throw floqfcs::ConfigError("cannot write output file '" + config.out + "'");
    out << text;
}

std::string table_text(const floqfcs::RunConfig& config,
                       const std::vector<floqfcs::ScanRow>& rows) {
    return config.format == floqfcs::OutputFormat::json ? floqfcs::rows_to_json(rows)
                                                        : floqfcs::rows_to_csv(rows);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state current statistics, precision bounds, and pulse "
                 "optimization for driven two-level thermal machines"};
    app.require_subcommand(1);

    CommonOpts scan_opts, crab_opts, circ_opts, val_opts;
    std::string replay_path;

    CLI::App* scan = app.add_subcommand("scan", "sweep the modulation frequency");
    add_common(scan, scan_opts);

    CLI::App* crab = app.add_subcommand("crab-scan", "optimize a pulse at each grid point");
    add_common(crab, crab_opts);
    crab->add_option("--replay", replay_path, "replay pulses from an archive file");

    CLI::App* circ = app.add_subcommand("circular-scan", "sweep the drive frequency (machine = circular)");
    add_common(circ, circ_opts);

    CLI::App* val = app.add_subcommand("validate", "jump-process check against analytic cumulants");
    add_common(val, val_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (scan->parsed()) {
            const auto config = load(scan_opts);
            emit(config, table_text(config, floqfcs::run_scan(config)));
            return kExitOk;
        }
        if (crab->parsed()) {
            const auto config = load(crab_opts);
            const auto result = floqfcs::run_crab_scan(config, replay_path);
            emit(config, table_text(config, result.rows));
            const std::string archive_path =
                (config.out.empty() ? std::string("pulses") : config.out) + ".pulses.json";
            std::ofstream archive(archive_path, std::ios::binary);
            if (!archive)
                throw floqfcs::ConfigError("cannot write pulse archive '" + archive_path + "'");
            archive << floqfcs::pulses_to_json(config, result);
            return kExitOk;
        }
        if (circ->parsed()) {
            auto config = load(circ_opts);
            if (config.machine != floqfcs::MachineKind::circular)
                throw floqfcs::ConfigError("circular-scan: config must set machine = circular");
            emit(config, table_text(config, floqfcs::run_scan(config)));
            return kExitOk;
        }
        if (val->parsed()) {
            const auto config = load(val_opts);
            const auto [rows, pass] = floqfcs::run_validate(config);
            emit(config, floqfcs::validation_to_csv(rows));
            if (!pass) {
                std::cerr << "validate: mean-current z-score above 4\n";
                return kExitValidation;
            }
            return kExitOk;
        }
    } catch (const floqfcs::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitConfig;
}
