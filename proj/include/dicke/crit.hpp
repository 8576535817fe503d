#pragma once

// Quantum-phase-transition signatures: lambda sweeps of finite-N exact
// diagonalization against the mean-field curves, finite-difference slopes,
// curvature-peak location of the critical coupling, and the linear-in-N
// scaling of the peak slope of the total geometric phase.
//
// Concurrency contract: work items are indexed up front and every worker
// writes only its own slot, aggregation is single threaded, so results are
// byte-identical for any worker count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "dicke/errors.hpp"
#include "dicke/model.hpp"
#include "dicke/sector_ed.hpp"

namespace dicke {

struct EdSweepPoint {
    double e0_per_atom;
    double gp_per_atom; // 2pi <a†a> / N
    std::size_t sector; // winning M*
    std::size_t scan_limit;
};

struct AnalyticSweepPoint {
    double e0_per_atom;
    double gp_per_atom;
};

struct SweepResult {
    ModelParams params;
    std::vector<std::size_t> n_ladder;
    std::vector<double> lambda_grid;
    std::vector<std::vector<EdSweepPoint>> ed; // ed[ladder index][grid index]
    std::vector<AnalyticSweepPoint> analytic;  // analytic[grid index]
};

namespace detail {

inline void check_ladder(const std::vector<std::size_t>& ladder) {
    if (ladder.empty())
        throw std::invalid_argument("n_ladder must be nonempty");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (ladder[i] < 1)
            throw std::invalid_argument("n_ladder entries must be >= 1");
        if (i > 0 && ladder[i] <= ladder[i - 1])
            throw std::invalid_argument("n_ladder must be strictly increasing");
    }
}

inline void check_grid(const std::vector<double>& grid) {
    if (grid.empty())
        throw std::invalid_argument("lambda grid must be nonempty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]))
            throw std::invalid_argument("lambda grid must be finite");
        if (i > 0 && grid[i] <= grid[i - 1])
            throw std::invalid_argument("lambda grid must be strictly increasing");
    }
}

} // namespace detail

inline SweepResult sweep(const ModelParams& p, const std::vector<std::size_t>& n_ladder,
                         const std::vector<double>& lambda_grid, const ScanPolicy& policy = {},
                         std::size_t workers = 1) {
    detail::check_ladder(n_ladder);
    detail::check_grid(lambda_grid);

    SweepResult res;
    res.params = p;
    res.n_ladder = n_ladder;
    res.lambda_grid = lambda_grid;
    res.ed.assign(n_ladder.size(), std::vector<EdSweepPoint>(lambda_grid.size()));
    res.analytic.resize(lambda_grid.size());

    const std::size_t n_items = n_ladder.size() * lambda_grid.size();
    std::vector<std::exception_ptr> failures(n_items);

    const auto run_item = [&](std::size_t item) {
        const std::size_t li = item / lambda_grid.size();
        const std::size_t gi = item % lambda_grid.size();
        const std::size_t n = n_ladder[li];
        const double lambda = lambda_grid[gi];
        const EDGroundState g = ground_state(p, (long long)n, lambda, policy);
        res.ed[li][gi] = EdSweepPoint{
            g.energy / double(n),
            2.0 * std::numbers::pi * g.photon_expectation / double(n),
            g.sector,
            scan_upper_bound(p, n, lambda, policy),
        };
    };

    std::size_t pool = workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                    : workers;
    pool = std::min(pool, n_items);

    if (pool <= 1) {
        for (std::size_t item = 0; item < n_items; ++item) {
            try {
                run_item(item);
            } catch (...) {
                failures[item] = std::current_exception();
                break;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> threads;
        threads.reserve(pool);
        for (std::size_t w = 0; w < pool; ++w) {
            threads.emplace_back([&] {
                for (;;) {
                    const std::size_t item = next.fetch_add(1);
                    if (item >= n_items) return;
                    try {
                        run_item(item);
                    } catch (...) {
                        failures[item] = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : threads) t.join();
    }

    // Rethrow the failure of the lowest item index, so error propagation is
    // independent of scheduling.
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    for (std::size_t gi = 0; gi < lambda_grid.size(); ++gi)
        res.analytic[gi] = AnalyticSweepPoint{ground_energy_per_atom(p, lambda_grid[gi]),
                                              gp_per_atom(p, lambda_grid[gi])};
    return res;
}

// Finite-difference slope on a uniform grid: central differences inside,
// one-sided at the ends.
inline std::vector<double> derivative_series(const std::vector<double>& grid,
                                             const std::vector<double>& values) {
    if (grid.size() != values.size())
        throw std::invalid_argument("grid and value series must have equal length");
    if (grid.size() < 3)
        throw GridTooSmall("derivative needs at least 3 points, got "
                           + std::to_string(grid.size()));
    const std::size_t n = grid.size();
    const double h = grid[1] - grid[0];
    if (!(h > 0.0))
        throw NonUniformGrid("grid must be strictly increasing");
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (std::abs((grid[i + 1] - grid[i]) - h) > 1e-9 * std::abs(h))
            throw NonUniformGrid("grid spacing varies at index " + std::to_string(i));

    std::vector<double> out(n);
    out[0] = (values[1] - values[0]) / h;
    out[n - 1] = (values[n - 1] - values[n - 2]) / h;
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = (values[i + 1] - values[i - 1]) / (2.0 * h);
    return out;
}

// Critical-coupling estimate: grid point with the largest signed second
// difference v[i+1] - 2 v[i] + v[i-1]. The geometric-phase series is flat
// below the transition and convex above it, so the discrete curvature peaks
// at the bend. Flat data carry no signal and are rejected.
inline double estimate_critical_point(const std::vector<double>& grid,
                                      const std::vector<double>& values) {
    if (grid.size() != values.size())
        throw std::invalid_argument("grid and value series must have equal length");
    if (grid.size() < 3)
        throw GridTooSmall("curvature estimate needs at least 3 points, got "
                           + std::to_string(grid.size()));

    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_i = 1;
    double vmax = 0.0;
    for (double v : values) vmax = std::max(vmax, std::abs(v));
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double c = values[i + 1] - 2.0 * values[i] + values[i - 1];
        if (c > best) {
            best = c;
            best_i = i;
        }
    }
    if (!(best > 1e-12 * std::max(1.0, vmax)))
        throw GridDoesNotBracket("no curvature peak: series is flat or concave on this grid");
    return grid[best_i];
}

// Same estimator applied to the ED geometric-phase series of one ladder entry.
inline double estimate_critical_point(const SweepResult& s, std::size_t n_atoms) {
    const auto it = std::find(s.n_ladder.begin(), s.n_ladder.end(), n_atoms);
    if (it == s.n_ladder.end())
        throw std::invalid_argument("n_atoms " + std::to_string(n_atoms) + " not in the ladder");
    const double lc = critical_coupling(s.params);
    if (!(s.lambda_grid.front() < lc && lc < s.lambda_grid.back()))
        throw GridDoesNotBracket("lambda grid [" + std::to_string(s.lambda_grid.front()) + ", "
                                 + std::to_string(s.lambda_grid.back())
                                 + "] does not bracket the critical coupling "
                                 + std::to_string(lc));
    const std::size_t li = std::size_t(it - s.n_ladder.begin());
    std::vector<double> series(s.lambda_grid.size());
    for (std::size_t gi = 0; gi < series.size(); ++gi) series[gi] = s.ed[li][gi].gp_per_atom;
    return estimate_critical_point(s.lambda_grid, series);
}

struct LinearFit {
    double slope;
    double intercept;
    double r_squared;
};

inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear fit needs two equal-length series of >= 2 points");
    const double n = double(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0))
        throw std::invalid_argument("linear fit needs at least two distinct x values");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (intercept + slope * x[i]);
        ss_res += r * r;
    }
    const double r2 = syy > 0.0 ? 1.0 - ss_res / syy : (ss_res > 0.0 ? 0.0 : 1.0);
    return LinearFit{slope, intercept, r2};
}

struct ScalingFit {
    std::vector<std::size_t> n_ladder;
    std::vector<double> peak_slopes; // interior peak of d(total gp)/dlambda, per N
    double slope;
    double intercept;
    double r_squared;
};

// Peak slope of the TOTAL geometric phase N * (gamma0/N) grows linearly in N
// with coefficient 2pi lambda_c / omega^2. Requires at least 4 ladder sizes
// and a grid that brackets lambda_c.
inline ScalingFit scaling_fit(const ModelParams& p, const std::vector<std::size_t>& n_ladder,
                              const std::vector<double>& lambda_grid,
                              const ScanPolicy& policy = {}, std::size_t workers = 1) {
    if (n_ladder.size() < 4)
        throw std::invalid_argument("scaling fit needs at least 4 ladder sizes, got "
                                    + std::to_string(n_ladder.size()));
    detail::check_grid(lambda_grid);
    const double lc = critical_coupling(p);
    if (!(lambda_grid.front() < lc && lc < lambda_grid.back()))
        throw GridDoesNotBracket("lambda grid [" + std::to_string(lambda_grid.front()) + ", "
                                 + std::to_string(lambda_grid.back())
                                 + "] does not bracket the critical coupling "
                                 + std::to_string(lc));

    const SweepResult s = sweep(p, n_ladder, lambda_grid, policy, workers);

    std::vector<double> peaks(n_ladder.size());
    std::vector<double> total(lambda_grid.size());
    for (std::size_t li = 0; li < n_ladder.size(); ++li) {
        for (std::size_t gi = 0; gi < lambda_grid.size(); ++gi)
            total[gi] = double(n_ladder[li]) * s.ed[li][gi].gp_per_atom;
        const std::vector<double> der = derivative_series(lambda_grid, total);
        // interior entries only: the one-sided endpoint estimates are
        // first-order and turn a sector step in the last interval into a
        // doubled spike, polluting the peak on staircase data
        peaks[li] = *std::max_element(der.begin() + 1, der.end() - 1);
    }

    std::vector<double> xs(n_ladder.begin(), n_ladder.end());
    const LinearFit fit = linear_fit(xs, peaks);
    return ScalingFit{n_ladder, peaks, fit.slope, fit.intercept, fit.r_squared};
}

} // namespace dicke
