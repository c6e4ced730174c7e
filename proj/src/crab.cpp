#include "floqfcs/crab.hpp"
#include "floqfcs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace floqfcs {

namespace {

constexpr double kBox = 1.0;

std::vector<std::pair<double, double>> unflatten(const std::vector<double>& x) {
    std::vector<std::pair<double, double>> coeffs(x.size() / 2);
    for (std::size_t n = 0; n < coeffs.size(); ++n)
        coeffs[n] = {x[2 * n], x[2 * n + 1]};
    return coeffs;
}

void project_into_box(std::vector<double>& x) {
    for (double& v : x) v = std::clamp(v, -kBox, kBox);
}

struct Simplex {
    std::vector<std::vector<double>> vertices;
    std::vector<double> values;

    std::size_t best() const {
        return static_cast<std::size_t>(
            std::min_element(values.begin(), values.end()) - values.begin());
    }
    std::size_t worst() const {
        return static_cast<std::size_t>(
            std::max_element(values.begin(), values.end()) - values.begin());
    }
    double diameter() const {
        double d = 0.0;
        const auto& b = vertices[best()];
        for (const auto& v : vertices)
            for (std::size_t i = 0; i < v.size(); ++i)
                d = std::max(d, std::abs(v[i] - b[i]));
        return d;
    }
};

} // namespace

std::string to_string(TurTarget t) {
    switch (t) {
        case TurTarget::R_h: return "R_h";
        case TurTarget::R_c: return "R_c";
        case TurTarget::R_P: return "R_P";
    }
    return "R_h";
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double evaluate_objective(const std::vector<std::pair<double, double>>& coeffs,
                          const OptimizationConfig& config,
                          double omega0, const BathModel& hot, const BathModel& cold) {
    try {
        const auto spec = ModulationSpec::crab(omega0, config.Delta, config.mu, coeffs);
        const FloquetSpectrum spectrum = floquet_spectrum(spec);
        const CumulantSet c = cumulants_analytic(spectrum, hot, cold);

        const double floor = 1e-12 * std::max(hot.gamma0, cold.gamma0) * omega0;
        const TurRatios tur = tur_ratios(c, floor);
        std::optional<double> value;
        switch (config.target) {
            case TurTarget::R_h: value = tur.R_h; break;
            case TurTarget::R_c: value = tur.R_c; break;
            case TurTarget::R_P: value = tur.R_P; break;
        }
        if (!value || !std::isfinite(*value) || *value < 0.0) return config.penalty_large;
        return *value;
    } catch (const TruncationError&) {
        return config.penalty_large;
    } catch (const DegenerateSteadyStateError&) {
        return config.penalty_large;
    }
}

OptimizedPulse optimize_pulse(const OptimizationConfig& config,
                              double omega0, const BathModel& hot, const BathModel& cold) {
    if (config.harmonics < 1) throw std::invalid_argument("optimize_pulse: harmonics >= 1");
    if (config.restarts < 1) throw std::invalid_argument("optimize_pulse: restarts >= 1");

    const std::size_t dim = 2 * static_cast<std::size_t>(config.harmonics);
    auto f = [&](const std::vector<double>& x) {
        return evaluate_objective(unflatten(x), config, omega0, hot, cold);
    };

    bool have_best = false;
    OptimizedPulse best;

    for (int restart = 0; restart < config.restarts; ++restart) {
        std::mt19937_64 rng(mix_seed(config.seed, static_cast<std::uint64_t>(restart)));
        std::uniform_real_distribution<double> box(-kBox, kBox);

        std::vector<double> x0(dim);
        for (double& v : x0) v = box(rng);

        Simplex sx;
        sx.vertices.push_back(x0);
        for (std::size_t i = 0; i < dim; ++i) {
            auto v = x0;
            v[i] += 0.3;
            project_into_box(v);
            sx.vertices.push_back(std::move(v));
        }
        sx.values.resize(sx.vertices.size());
        std::transform(sx.vertices.begin(), sx.vertices.end(), sx.values.begin(), f);

        // Nelder–Mead with box projection: reflection 1, expansion 2,
        // contraction 0.5, shrink 0.5.
        int iter = 0;
        for (; iter < config.max_iters; ++iter) {
            const std::size_t worst = sx.worst();
            const std::size_t bi = sx.best();
            if (sx.values[worst] - sx.values[bi] < 1e-8 || sx.diameter() < 1e-6) break;

            std::vector<double> centroid(dim, 0.0);
            for (std::size_t k = 0; k < sx.vertices.size(); ++k) {
                if (k == worst) continue;
                for (std::size_t i = 0; i < dim; ++i) centroid[i] += sx.vertices[k][i];
            }
            for (double& v : centroid) v /= static_cast<double>(sx.vertices.size() - 1);

            auto blend = [&](double t) {
                std::vector<double> p(dim);
                for (std::size_t i = 0; i < dim; ++i)
                    p[i] = centroid[i] + t * (centroid[i] - sx.vertices[worst][i]);
                project_into_box(p);
                return p;
            };

            auto reflected = blend(1.0);
            const double fr = f(reflected);
            const double fb = sx.values[bi];
            double second_worst = -std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < sx.values.size(); ++k)
                if (k != worst) second_worst = std::max(second_worst, sx.values[k]);

            if (fr < fb) {
                auto expanded = blend(2.0);
                const double fe = f(expanded);
                if (fe < fr) {
                    sx.vertices[worst] = std::move(expanded);
                    sx.values[worst] = fe;
                } else {
                    sx.vertices[worst] = std::move(reflected);
                    sx.values[worst] = fr;
                }
            } else if (fr < second_worst) {
                sx.vertices[worst] = std::move(reflected);
                sx.values[worst] = fr;
            } else {
                auto contracted = blend(fr < sx.values[worst] ? 0.5 : -0.5);
                const double fc = f(contracted);
                if (fc < std::min(fr, sx.values[worst])) {
                    sx.vertices[worst] = std::move(contracted);
                    sx.values[worst] = fc;
                } else {
                    const auto anchor = sx.vertices[bi];
                    for (std::size_t k = 0; k < sx.vertices.size(); ++k) {
                        if (k == bi) continue;
                        for (std::size_t i = 0; i < dim; ++i)
                            sx.vertices[k][i] = anchor[i] + 0.5 * (sx.vertices[k][i] - anchor[i]);
                        sx.values[k] = f(sx.vertices[k]);
                    }
                }
            }
        }

        const std::size_t bi = sx.best();
        if (!have_best || sx.values[bi] < best.objective_value) {
            have_best = true;
            best.coeffs = unflatten(sx.vertices[bi]);
            best.objective_value = sx.values[bi];
            best.iterations_used = iter;
            best.restart_index = restart;
        }
    }

    if (!have_best || best.objective_value >= config.penalty_large)
        throw NoFeasiblePulseError("optimize_pulse: all restarts penalized at Delta=" +
                                   std::to_string(config.Delta));

    const auto spec = ModulationSpec::crab(omega0, config.Delta, config.mu, best.coeffs);
    const FloquetSpectrum spectrum = floquet_spectrum(spec);
    best.cumulants = cumulants_analytic(spectrum, hot, cold);
    const double floor = 1e-12 * std::max(hot.gamma0, cold.gamma0) * omega0;
    best.report = make_machine_report(best.cumulants, hot.beta, cold.beta, floor,
                                      omega0, config.Delta, false);
    return best;
}

} // namespace floqfcs
