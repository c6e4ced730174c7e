#include "floqfcs/runner.hpp"
#include "floqfcs/errors.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace floqfcs {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string cell(const std::optional<double>& v) { return v ? fmt(*v) : std::string{}; }

double current_floor(const RunConfig& c) { return 1e-12 * c.gamma0 * c.omega0; }

std::pair<BathModel, BathModel> split_baths(const RunConfig& c) {
    return {BathModel::split_hot(c.beta_h, c.gamma0, c.Gamma, c.delta_shift, c.omega0),
            BathModel::split_cold(c.beta_c, c.gamma0, c.Gamma, c.delta_shift, c.omega0)};
}

std::pair<BathModel, BathModel> plain_baths(const RunConfig& c) {
    return {BathModel::plain(BathRole::hot, c.beta_h, c.gamma0, c.Gamma, c.delta_shift),
            BathModel::plain(BathRole::cold, c.beta_c, c.gamma0, c.Gamma, c.delta_shift)};
}

// Dispatch grid indices to a small pool; results land in grid order.
template <typename Work>
void parallel_for(std::size_t n, Work&& work) {
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t n_threads = std::min<std::size_t>(n, hw == 0 ? 2 : hw);
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) work(i);
        });
    for (auto& th : pool) th.join();
}

MachineReport report_for(const RunConfig& config, double var, const CumulantSet& c) {
    const bool with_gap = config.machine == MachineKind::sinusoidal;
    return make_machine_report(c, config.beta_h, config.beta_c, current_floor(config),
                               config.omega0, var, with_gap);
}

ScanRow degenerate_row(const RunConfig& config, double var) {
    ScanRow row;
    row.var = var;
    row.c = CumulantSet{};  // vanishing-coupling limit: all zeros
    row.report = MachineReport{};
    const double eta_C = 1.0 - config.beta_h / config.beta_c;
    row.report.eta_C_sq = eta_C * eta_C;
    if (eta_C > 0.0) {
        const double eta_R = (1.0 - eta_C) / eta_C;
        row.report.eta_R_sq = eta_R * eta_R;
    }
    return row;
}

} // namespace

const char* const kCsvHeader =
    "var,J_h,J_c,P,var_h,var_c,cov_hc,var_P,S_dot,R_h,R_c,R_P,regime,"
    "eta2,eta_mean_sq,eta_C_sq,eta_R_sq,D,D_S_dot";

std::vector<double> scan_grid(const RunConfig& config) {
    std::vector<double> grid(static_cast<std::size_t>(config.scan_points));
    const double step = (config.scan_max - config.scan_min) / (config.scan_points - 1);
    for (int i = 0; i < config.scan_points; ++i)
        grid[static_cast<std::size_t>(i)] = config.scan_min + step * i;
    return grid;
}

CumulantSet evaluate_machine(const RunConfig& config, double var) {
    switch (config.machine) {
        case MachineKind::sinusoidal: {
            const auto [hot, cold] = split_baths(config);
            const FloquetSpectrum spectrum =
                config.sinusoidal_weights == SinusoidalWeights::three_channel
                    ? sinusoidal_three_mode_spectrum(config.omega0, config.lambda, var)
                    : floquet_spectrum(
                          ModulationSpec::sinusoidal(config.omega0, config.lambda, var));
            return cumulants_analytic(spectrum, hot, cold);
        }
        case MachineKind::crab:
            throw ConfigError("evaluate_machine: crab machines are driven by crab-scan");
        case MachineKind::circular: {
            const auto [hot, cold] = plain_baths(config);
            return circular_cumulants_analytic(floquet_diagonalize(config.omega0, var, config.g),
                                               hot, cold);
        }
    }
    throw ConfigError("evaluate_machine: unknown machine");
}

std::vector<ScanRow> run_scan(const RunConfig& config) {
    if (config.machine == MachineKind::crab)
        throw ConfigError("scan: machine = crab requires the crab-scan command");
    const std::vector<double> grid = scan_grid(config);
    std::vector<ScanRow> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const double var = grid[i];
        try {
            const CumulantSet c = evaluate_machine(config, var);
            rows[i] = ScanRow{var, c, report_for(config, var, c)};
        } catch (const DegenerateSteadyStateError&) {
            rows[i] = degenerate_row(config, var);
        }
    });
    return rows;
}

CrabScanResult run_crab_scan(const RunConfig& config, const std::string& replay_archive) {
    if (config.machine != MachineKind::crab)
        throw ConfigError("crab-scan: requires machine = crab");
    const auto [hot, cold] = split_baths(config);
    const std::vector<double> grid = scan_grid(config);

    std::vector<std::vector<std::pair<double, double>>> replay;
    if (!replay_archive.empty()) {
        std::ifstream in(replay_archive);
        if (!in) throw ConfigError("crab-scan: cannot open archive '" + replay_archive + "'");
        nlohmann::json j;
        in >> j;
        for (const auto& point : j.at("points")) {
            std::vector<std::pair<double, double>> coeffs;
            for (const auto& ab : point.at("coeffs"))
                coeffs.emplace_back(ab.at(0).get<double>(), ab.at(1).get<double>());
            replay.push_back(std::move(coeffs));
        }
        if (replay.size() != grid.size())
            throw ConfigError("crab-scan: archive has " + std::to_string(replay.size()) +
                              " points, config expects " + std::to_string(grid.size()));
    }

    CrabScanResult result;
    result.rows.resize(grid.size());
    result.pulses.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        OptimizationConfig oc;
        oc.target = config.target;
        oc.Delta = grid[i];
        oc.harmonics = config.crab_N;
        oc.mu = config.mu;
        oc.max_iters = config.max_iters;
        oc.restarts = config.restarts;
        oc.penalty_large = config.penalty;
        oc.seed = mix_seed(config.seed, i);

        OptimizedPulse pulse;
        if (!replay.empty()) {
            pulse.coeffs = replay[i];
            pulse.objective_value = evaluate_objective(pulse.coeffs, oc, config.omega0, hot, cold);
            const auto spec = ModulationSpec::crab(config.omega0, oc.Delta, oc.mu, pulse.coeffs);
            pulse.cumulants = cumulants_analytic(floquet_spectrum(spec), hot, cold);
            pulse.report = make_machine_report(pulse.cumulants, config.beta_h, config.beta_c,
                                               current_floor(config), config.omega0, oc.Delta,
                                               false);
        } else {
            pulse = optimize_pulse(oc, config.omega0, hot, cold);
        }
        result.rows[i] = ScanRow{grid[i], pulse.cumulants, pulse.report};
        result.pulses[i] = std::move(pulse);
    });
    return result;
}

std::pair<std::vector<ValidationRow>, bool> run_validate(const RunConfig& config) {
    const std::vector<double> grid = scan_grid(config);
    std::vector<ValidationRow> rows(grid.size());
    std::atomic<bool> pass{true};
    parallel_for(grid.size(), [&](std::size_t i) {
        const double var = grid[i];
        std::vector<JumpChannel> channels;
        CumulantSet analytic;
        if (config.machine == MachineKind::circular) {
            const auto [hot, cold] = plain_baths(config);
            const CircularFloquet cf = floquet_diagonalize(config.omega0, var, config.g);
            channels = build_channels(cf, hot, cold);
            analytic = circular_cumulants_analytic(cf, hot, cold);
        } else {
            const auto [hot, cold] = split_baths(config);
            const FloquetSpectrum spectrum =
                config.sinusoidal_weights == SinusoidalWeights::three_channel
                    ? sinusoidal_three_mode_spectrum(config.omega0, config.lambda, var)
                    : floquet_spectrum(
                          ModulationSpec::sinusoidal(config.omega0, config.lambda, var));
            channels = build_channels(spectrum, hot, cold);
            analytic = cumulants_analytic(spectrum, hot, cold);
        }
        const SampledCumulants sampled = simulate_counting(
            channels, config.mc_n_jumps, config.mc_burn_in, mix_seed(config.seed, i));
        rows[i] = ValidationRow{var, compare_with_analytic(sampled, analytic)};
        for (const auto& z : rows[i].scores)
            if (z.is_mean && std::abs(z.z) > 4.0) pass = false;
    });
    return {rows, pass.load()};
}

std::string rows_to_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << fmt(r.var) << ',' << fmt(r.c.J_h) << ',' << fmt(r.c.J_c) << ',' << fmt(r.c.P)
            << ',' << fmt(r.c.var_h) << ',' << fmt(r.c.var_c) << ',' << fmt(r.c.cov_hc) << ','
            << fmt(r.c.var_P) << ',' << fmt(r.c.S_dot) << ',' << cell(r.report.tur.R_h) << ','
            << cell(r.report.tur.R_c) << ',' << cell(r.report.tur.R_P) << ','
            << to_string(r.report.regime) << ',' << cell(r.report.eta2) << ','
            << cell(r.report.eta_mean_sq) << ',' << fmt(r.report.eta_C_sq) << ','
            << fmt(r.report.eta_R_sq) << ',' << cell(r.report.D) << ','
            << cell(r.report.D_S_dot) << '\n';
    }
    return out.str();
}

std::string rows_to_json(const std::vector<ScanRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["var"] = r.var;
        o["J_h"] = r.c.J_h;
        o["J_c"] = r.c.J_c;
        o["P"] = r.c.P;
        o["var_h"] = r.c.var_h;
        o["var_c"] = r.c.var_c;
        o["cov_hc"] = r.c.cov_hc;
        o["var_P"] = r.c.var_P;
        o["S_dot"] = r.c.S_dot;
        if (r.report.tur.R_h) o["R_h"] = *r.report.tur.R_h;
        if (r.report.tur.R_c) o["R_c"] = *r.report.tur.R_c;
        if (r.report.tur.R_P) o["R_P"] = *r.report.tur.R_P;
        o["regime"] = to_string(r.report.regime);
        if (r.report.eta2) o["eta2"] = *r.report.eta2;
        if (r.report.eta_mean_sq) o["eta_mean_sq"] = *r.report.eta_mean_sq;
        o["eta_C_sq"] = r.report.eta_C_sq;
        o["eta_R_sq"] = r.report.eta_R_sq;
        if (r.report.D) o["D"] = *r.report.D;
        if (r.report.D_S_dot) o["D_S_dot"] = *r.report.D_S_dot;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::string pulses_to_json(const RunConfig& config, const CrabScanResult& result) {
    nlohmann::ordered_json j;
    j["seed"] = config.seed;
    j["target"] = to_string(config.target);
    j["mu"] = config.mu;
    j["N"] = config.crab_N;
    j["points"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < result.pulses.size(); ++i) {
        const auto& p = result.pulses[i];
        nlohmann::ordered_json o;
        o["var"] = result.rows[i].var;
        o["objective"] = p.objective_value;
        o["restart_index"] = p.restart_index;
        o["iterations"] = p.iterations_used;
        nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
        for (const auto& [a, b] : p.coeffs) coeffs.push_back({a, b});
        o["coeffs"] = std::move(coeffs);
        j["points"].push_back(std::move(o));
    }
    return j.dump(2) + "\n";
}

std::string validation_to_csv(const std::vector<ValidationRow>& rows) {
    std::ostringstream out;
    out << "var,name,sampled,analytic,stderr,z\n";
    for (const auto& r : rows)
        for (const auto& z : r.scores)
            out << fmt(r.var) << ',' << z.name << ',' << fmt(z.sampled) << ','
                << fmt(z.analytic) << ',' << fmt(z.stderr_est) << ',' << fmt(z.z) << '\n';
    return out.str();
}

} // namespace floqfcs
