#include "floqfcs/config.hpp"
#include "floqfcs/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace floqfcs {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for '" + key + "': " + v);
    }
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for '" + key + "': " + v);
    }
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void validate(const RunConfig& c) {
    if (c.scan_min <= 0.0) throw ConfigError("config: scan_min must be positive");
    if (c.scan_points < 2) throw ConfigError("config: scan_points must be at least 2");
    if (c.scan_max < c.scan_min) throw ConfigError("config: scan_max < scan_min");
    if (c.machine != MachineKind::circular && c.scan_max >= c.omega0)
        throw ConfigError("config: modulated machines require scan_max < omega0");
    if (!(c.beta_h > 0.0 && c.beta_c > 0.0)) throw ConfigError("config: betas must be positive");
    if (c.machine == MachineKind::sinusoidal && (c.lambda < 0.0 || c.lambda > 1.0))
        throw ConfigError("config: lambda must lie in [0, 1]");
    if (c.machine == MachineKind::crab && c.crab_N < 1)
        throw ConfigError("config: crab_N must be at least 1");
    if (c.machine == MachineKind::circular && c.g < 0.0)
        throw ConfigError("config: g must be non-negative");
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (val.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + ": empty value for '" + key + "'");

        if (key == "machine") {
            if (val == "sinusoidal") c.machine = MachineKind::sinusoidal;
            else if (val == "crab") c.machine = MachineKind::crab;
            else if (val == "circular") c.machine = MachineKind::circular;
            else throw ConfigError("config: unknown machine '" + val + "'");
        } else if (key == "omega0") c.omega0 = to_double(key, val);
        else if (key == "beta_h") c.beta_h = to_double(key, val);
        else if (key == "beta_c") c.beta_c = to_double(key, val);
        else if (key == "gamma0") c.gamma0 = to_double(key, val);
        else if (key == "Gamma") c.Gamma = to_double(key, val);
        else if (key == "delta_shift") c.delta_shift = to_double(key, val);
        else if (key == "lambda") c.lambda = to_double(key, val);
        else if (key == "mu") c.mu = to_double(key, val);
        else if (key == "crab_N") c.crab_N = static_cast<int>(to_int(key, val));
        else if (key == "g") c.g = to_double(key, val);
        else if (key == "sinusoidal_weights") {
            if (val == "three_channel") c.sinusoidal_weights = SinusoidalWeights::three_channel;
            else if (val == "bessel") c.sinusoidal_weights = SinusoidalWeights::bessel;
            else throw ConfigError("config: unknown sinusoidal_weights '" + val + "'");
        } else if (key == "scan_min") c.scan_min = to_double(key, val);
        else if (key == "scan_max") c.scan_max = to_double(key, val);
        else if (key == "scan_points") c.scan_points = static_cast<int>(to_int(key, val));
        else if (key == "target") {
            if (val == "R_h") c.target = TurTarget::R_h;
            else if (val == "R_c") c.target = TurTarget::R_c;
            else if (val == "R_P") c.target = TurTarget::R_P;
            else throw ConfigError("config: unknown target '" + val + "'");
        } else if (key == "max_iters") c.max_iters = static_cast<int>(to_int(key, val));
        else if (key == "restarts") c.restarts = static_cast<int>(to_int(key, val));
        else if (key == "penalty") c.penalty = to_double(key, val);
        else if (key == "mc_n_jumps") c.mc_n_jumps = static_cast<std::uint64_t>(to_int(key, val));
        else if (key == "mc_burn_in") c.mc_burn_in = static_cast<std::uint64_t>(to_int(key, val));
        else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_int(key, val));
        else if (key == "out") c.out = val;
        else if (key == "format") {
            if (val == "csv") c.format = OutputFormat::csv;
            else if (val == "json") c.format = OutputFormat::json;
            else throw ConfigError("config: unknown format '" + val + "'");
        } else {
            throw ConfigError("config: line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    validate(c);
    return c;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    out << "machine = "
        << (c.machine == MachineKind::sinusoidal ? "sinusoidal"
            : c.machine == MachineKind::crab     ? "crab"
                                                 : "circular")
        << '\n';
    out << "omega0 = " << fmt(c.omega0) << '\n';
    out << "beta_h = " << fmt(c.beta_h) << '\n';
    out << "beta_c = " << fmt(c.beta_c) << '\n';
    out << "gamma0 = " << fmt(c.gamma0) << '\n';
    out << "Gamma = " << fmt(c.Gamma) << '\n';
    out << "delta_shift = " << fmt(c.delta_shift) << '\n';
    out << "lambda = " << fmt(c.lambda) << '\n';
    out << "mu = " << fmt(c.mu) << '\n';
    out << "crab_N = " << c.crab_N << '\n';
    out << "g = " << fmt(c.g) << '\n';
    out << "sinusoidal_weights = "
        << (c.sinusoidal_weights == SinusoidalWeights::three_channel ? "three_channel" : "bessel")
        << '\n';
    out << "scan_min = " << fmt(c.scan_min) << '\n';
    out << "scan_max = " << fmt(c.scan_max) << '\n';
    out << "scan_points = " << c.scan_points << '\n';
    out << "target = " << to_string(c.target) << '\n';
    out << "max_iters = " << c.max_iters << '\n';
    out << "restarts = " << c.restarts << '\n';
    out << "penalty = " << fmt(c.penalty) << '\n';
    out << "mc_n_jumps = " << c.mc_n_jumps << '\n';
    out << "mc_burn_in = " << c.mc_burn_in << '\n';
    out << "seed = " << c.seed << '\n';
    if (!c.out.empty()) out << "out = " << c.out << '\n';
    out << "format = " << (c.format == OutputFormat::csv ? "csv" : "json") << '\n';
    return out.str();
}

} // namespace floqfcs
