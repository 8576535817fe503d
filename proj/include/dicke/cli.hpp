#pragma once

// Command-line front end. Exit codes: 0 success, 2 invalid configuration,
// 3 numerical failure (scan boundary, no convergence), 4 I/O failure.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dicke/commands.hpp"
#include "dicke/config.hpp"
#include "dicke/errors.hpp"

namespace dicke {

inline int run_cli(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"Ground state, geometric phase and criticality of the rotating-wave "
                 "Dicke model: mean-field analytics cross-validated against sector exact "
                 "diagonalization"};
    app.set_config("--config", "", "Read options from a key=value file (CLI flags win)");

    app.add_option("--omega", cfg.omega, "Photon frequency")->capture_default_str();
    app.add_option("--omega0", cfg.omega0, "Atomic level splitting")->capture_default_str();
    app.add_option("--lambda-min", cfg.lambda_min, "Lower end of the coupling grid")
        ->capture_default_str();
    app.add_option("--lambda-max", cfg.lambda_max, "Upper end of the coupling grid")
        ->capture_default_str();
    app.add_option("--lambda-steps", cfg.lambda_steps, "Number of grid points, inclusive ends")
        ->capture_default_str();
    app.add_option("--n-ladder", cfg.n_ladder, "Comma-separated atom numbers, e.g. 8,16,32")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--m-max-factor", cfg.m_max_factor,
                   "Sector scan bound: M <= ceil(factor N max(1, lambda^2/omega^2))")
        ->capture_default_str();
    app.add_option("--loop-steps", cfg.loop_steps, "Pancharatnam loop discretization K")
        ->capture_default_str();
    app.add_option("--workers", cfg.workers, "Worker threads; 0 = all hardware threads")
        ->capture_default_str();
    app.add_option("--out", cfg.out, "Output path; empty writes to stdout");
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_flag("--plot", cfg.plot,
                 "Also write an SVG chart next to --out (analytic and sweep only)");

    CLI::App* analytic =
        app.add_subcommand("analytic", "Mean-field curves over the lambda grid");
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Finite-N ED vs mean field over ladder x grid");
    CLI::App* scaling =
        app.add_subcommand("scaling", "Linear-in-N scaling fit of the peak phase slope");
    CLI::App* gp_loop_cmd =
        app.add_subcommand("gp-loop", "Pancharatnam loop vs closed-form geometric phase");
    for (CLI::App* sub : {analytic, sweep_cmd, scaling, gp_loop_cmd}) sub->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analytic)) cmd_analytic(cfg);
        else if (app.got_subcommand(sweep_cmd)) cmd_sweep(cfg);
        else if (app.got_subcommand(scaling)) cmd_scaling(cfg);
        else cmd_gp_loop(cfg);
        return 0;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 4;
    } catch (const ScanBoundaryHit& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const NoConvergence& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const StepCountTooSmall& e) {
        std::cerr << "config error: --loop-steps: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

inline int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("dicke");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_cli(int(argv.size()), argv.data());
}

} // namespace dicke
