#pragma once

// Run configuration shared by all CLI commands. Defaults reproduce the
// standard resonant setting omega = omega0 = 1 on a lambda grid spanning both
// phases, so a bare `sweep` already shows the transition.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "dicke/errors.hpp"

namespace dicke {

struct RunConfig {
    double omega = 1.0;
    double omega0 = 1.0;
    double lambda_min = 0.2;
    double lambda_max = 1.4;
    std::size_t lambda_steps = 61;
    std::vector<std::size_t> n_ladder{8, 16, 32};
    double m_max_factor = 6.0;
    std::size_t loop_steps = 512;
    std::size_t workers = 0; // 0 = all hardware threads
    std::string out;         // empty = stdout
    std::string format = "csv";
    bool plot = false;
};

// Throws ConfigError naming the offending field; sorts and dedupes the ladder.
inline void validate_config(RunConfig& cfg) {
    if (!(cfg.omega > 0.0) || !std::isfinite(cfg.omega))
        throw ConfigError("omega: must be finite and > 0");
    if (!(cfg.omega0 > 0.0) || !std::isfinite(cfg.omega0))
        throw ConfigError("omega0: must be finite and > 0");
    if (!(cfg.lambda_min >= 0.0) || !std::isfinite(cfg.lambda_min))
        throw ConfigError("lambda-min: must be finite and >= 0");
    if (!std::isfinite(cfg.lambda_max))
        throw ConfigError("lambda-max: must be finite");
    if (!(cfg.lambda_min < cfg.lambda_max))
        throw ConfigError("lambda-min/lambda-max: need lambda-min < lambda-max");
    if (cfg.lambda_steps < 2)
        throw ConfigError("lambda-steps: need at least 2 grid points");
    if (cfg.lambda_steps > 1000000)
        throw ConfigError("lambda-steps: at most 1000000 grid points");
    if (cfg.n_ladder.empty())
        throw ConfigError("n-ladder: must be nonempty");
    for (std::size_t n : cfg.n_ladder)
        if (n < 1) throw ConfigError("n-ladder: entries must be >= 1");
    std::sort(cfg.n_ladder.begin(), cfg.n_ladder.end());
    cfg.n_ladder.erase(std::unique(cfg.n_ladder.begin(), cfg.n_ladder.end()),
                       cfg.n_ladder.end());
    if (!(cfg.m_max_factor > 0.0) || !std::isfinite(cfg.m_max_factor))
        throw ConfigError("m-max-factor: must be finite and > 0");
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("format: must be csv or json");
    if (cfg.plot && cfg.out.empty())
        throw ConfigError("plot: needs --out to derive the .svg path from");
    if (cfg.plot && cfg.lambda_steps < 3)
        throw ConfigError("lambda-steps: the derivative panel of --plot needs at least 3");
}

// Uniform inclusive grid; the last point is pinned to lambda_max exactly.
inline std::vector<double> lambda_grid(const RunConfig& cfg) {
    std::vector<double> g(cfg.lambda_steps);
    const double h = (cfg.lambda_max - cfg.lambda_min) / double(cfg.lambda_steps - 1);
    for (std::size_t i = 0; i < cfg.lambda_steps; ++i) g[i] = cfg.lambda_min + h * double(i);
    g.back() = cfg.lambda_max;
    return g;
}

} // namespace dicke
