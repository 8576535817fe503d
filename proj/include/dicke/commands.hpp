#pragma once

// The four CLI commands. Each validates its config, computes via the library,
// and serializes to --out (or stdout). Errors surface as the library's typed
// exceptions; the CLI front end maps them to exit codes.

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "dicke/config.hpp"
#include "dicke/crit.hpp"
#include "dicke/gp.hpp"
#include "dicke/model.hpp"
#include "dicke/svg.hpp"
#include "dicke/table.hpp"

namespace dicke {

namespace detail {

inline void write_text_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open output file: " + path);
    f << content;
    f.flush();
    if (!f)
        throw IoError("write failed: " + path);
}

// foo.csv -> foo.svg; a path without extension just gains .svg
inline std::string svg_path_for(const std::string& out) {
    const std::size_t slash = out.find_last_of('/');
    const std::size_t dot = out.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return out + ".svg";
    return out.substr(0, dot) + ".svg";
}

} // namespace detail

// Mean-field curves on the lambda grid: order parameters, energy, geometric
// phase and its right derivative.
inline void cmd_analytic(RunConfig cfg) {
    validate_config(cfg);
    const ModelParams p = validate_params(cfg.omega, cfg.omega0);
    const std::vector<double> grid = lambda_grid(cfg);
    const std::vector<AnalyticRow> rows = analytic_table(p, grid);

    std::ostringstream buf;
    if (cfg.format == "csv")
        write_analytic_csv(buf, p, rows);
    else
        buf << analytic_to_json(p, rows).dump(2) << '\n';
    detail::write_text_output(cfg.out, buf.str());

    if (cfg.plot) {
        SvgSeries gp{"gp/N", grid, {}, "", false};
        SvgSeries slope{"d(gp/N)/dlambda", grid, {}, "", false};
        for (const AnalyticRow& r : rows) {
            gp.y.push_back(r.gp_per_atom);
            slope.y.push_back(r.gp_slope);
        }
        const std::vector<SvgPanel> panels = {
            SvgPanel{"Geometric phase per atom (mean field)", "lambda", "gp/N", {gp}},
            SvgPanel{"Right derivative", "lambda", "d(gp/N)/dlambda", {slope}},
        };
        detail::write_text_output(detail::svg_path_for(cfg.out), render_svg_chart(panels));
    }
}

// Finite-N ED against the mean-field curves over the (N ladder) x (lambda
// grid); optional two-panel SVG (per-atom geometric phase and its slope).
inline void cmd_sweep(RunConfig cfg) {
    validate_config(cfg);
    const ModelParams p = validate_params(cfg.omega, cfg.omega0);
    const std::vector<double> grid = lambda_grid(cfg);
    const SweepResult s =
        sweep(p, cfg.n_ladder, grid, ScanPolicy{cfg.m_max_factor}, cfg.workers);

    std::ostringstream buf;
    if (cfg.format == "csv")
        write_sweep_csv(buf, s);
    else
        buf << sweep_to_json(s).dump(2) << '\n';
    detail::write_text_output(cfg.out, buf.str());

    if (cfg.plot) {
        SvgPanel top{"Geometric phase per atom", "lambda", "gp/N", {}};
        SvgPanel bottom{"Slope of the geometric phase per atom", "lambda", "d(gp/N)/dlambda", {}};
        for (std::size_t li = 0; li < s.n_ladder.size(); ++li) {
            std::vector<double> series(grid.size());
            for (std::size_t gi = 0; gi < grid.size(); ++gi)
                series[gi] = s.ed[li][gi].gp_per_atom;
            const std::string label = "N=" + std::to_string(s.n_ladder[li]);
            top.series.push_back(SvgSeries{label, grid, series, "", false});
            bottom.series.push_back(
                SvgSeries{label, grid, derivative_series(grid, series), "", false});
        }
        std::vector<double> an_gp(grid.size()), an_slope(grid.size());
        for (std::size_t gi = 0; gi < grid.size(); ++gi) {
            an_gp[gi] = s.analytic[gi].gp_per_atom;
            an_slope[gi] = gp_slope_per_atom(p, grid[gi]);
        }
        top.series.push_back(SvgSeries{"analytic", grid, an_gp, "#000000", true});
        bottom.series.push_back(SvgSeries{"analytic", grid, an_slope, "#000000", true});
        detail::write_text_output(detail::svg_path_for(cfg.out),
                                  render_svg_chart({top, bottom}));
    }
}

// Scaling of the peak slope of the total geometric phase with N. Text report
// to stdout; JSON additionally written to --out when given.
inline void cmd_scaling(RunConfig cfg) {
    validate_config(cfg);
    if (cfg.n_ladder.size() < 4)
        throw ConfigError("n-ladder: scaling fit needs at least 4 ladder sizes");
    const ModelParams p = validate_params(cfg.omega, cfg.omega0);
    const double lc = critical_coupling(p);
    if (!(cfg.lambda_min < lc && lc < cfg.lambda_max))
        throw ConfigError("lambda-min/lambda-max: grid [" + std::to_string(cfg.lambda_min)
                          + ", " + std::to_string(cfg.lambda_max)
                          + "] must bracket the critical coupling " + std::to_string(lc));

    const std::vector<double> grid = lambda_grid(cfg);
    const ScalingFit f =
        scaling_fit(p, cfg.n_ladder, grid, ScanPolicy{cfg.m_max_factor}, cfg.workers);
    const double target = gp_slope_at_critical(p);

    std::ostringstream rep;
    rep << "scaling of the peak slope of the total geometric phase\n";
    rep << "lambda_c = " << fmt17(lc) << ", grid [" << fmt17(grid.front()) << ", "
        << fmt17(grid.back()) << "] with " << grid.size() << " points\n";
    for (std::size_t i = 0; i < f.n_ladder.size(); ++i)
        rep << "  N = " << f.n_ladder[i] << "  peak slope = " << fmt17(f.peak_slopes[i])
            << '\n';
    rep << "fit: slope = " << fmt17(f.slope) << ", intercept = " << fmt17(f.intercept)
        << ", r_squared = " << fmt17(f.r_squared) << '\n';
    rep << "target slope 2 pi lambda_c / omega^2 = " << fmt17(target) << '\n';
    rep << "relative deviation = " << fmt17(std::abs(f.slope - target) / target) << '\n';
    std::cout << rep.str();
    std::cout.flush();

    if (!cfg.out.empty())
        detail::write_text_output(cfg.out, scaling_to_json(p, f).dump(2) + "\n");
}

// Pancharatnam loop against the closed form for every (N, lambda) of the
// config. rel_error is blank where the closed form is exactly zero.
inline void cmd_gp_loop(RunConfig cfg) {
    validate_config(cfg);
    const ModelParams p = validate_params(cfg.omega, cfg.omega0);
    const std::vector<double> grid = lambda_grid(cfg);

    struct Row {
        std::size_t n_atoms;
        double lambda;
        std::size_t sector;
        double loop;
        double closed;
    };
    std::vector<Row> rows;
    for (std::size_t n : cfg.n_ladder) {
        for (double lambda : grid) {
            const EDGroundState g =
                ground_state(p, (long long)n, lambda, ScanPolicy{cfg.m_max_factor});
            const NumberBasisState st = from_ground_state(g);
            rows.push_back(
                Row{n, lambda, g.sector, gp_loop(st, cfg.loop_steps), gp_closed_form(st)});
        }
    }

    std::ostringstream buf;
    if (cfg.format == "csv") {
        buf << "n_atoms,lambda,sector,loop_steps,gp_loop,gp_closed_form,abs_error,rel_error\n";
        for (const Row& r : rows) {
            const double abs_err = std::abs(r.loop - r.closed);
            buf << r.n_atoms << ',' << fmt17(r.lambda) << ',' << r.sector << ','
                << cfg.loop_steps << ',' << fmt17(r.loop) << ',' << fmt17(r.closed) << ','
                << fmt17(abs_err) << ',';
            if (r.closed != 0.0)
                buf << fmt17(abs_err / std::abs(r.closed));
            buf << '\n';
        }
    } else {
        nlohmann::json jrows = nlohmann::json::array();
        for (const Row& r : rows) {
            const double abs_err = std::abs(r.loop - r.closed);
            nlohmann::json jr{{"n_atoms", r.n_atoms},       {"lambda", r.lambda},
                              {"sector", r.sector},         {"loop_steps", cfg.loop_steps},
                              {"gp_loop", r.loop},          {"gp_closed_form", r.closed},
                              {"abs_error", abs_err}};
            if (r.closed != 0.0)
                jr["rel_error"] = abs_err / std::abs(r.closed);
            jrows.push_back(std::move(jr));
        }
        buf << nlohmann::json{{"omega", p.omega},
                              {"omega0", p.omega0},
                              {"loop_steps", cfg.loop_steps},
                              {"rows", std::move(jrows)}}
                   .dump(2)
            << '\n';
    }
    detail::write_text_output(cfg.out, buf.str());
}

} // namespace dicke
