// SPDX-License-Identifier: Apache-2.0
//
// Command line front end: experiment sweeps, bound reports, matrix
// completion on serialized observations, and the acceptance suite.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcradar/acceptance.hpp"
#include "mcradar/bounds.hpp"
#include "mcradar/config.hpp"
#include "mcradar/errors.hpp"
#include "mcradar/experiments.hpp"
#include "mcradar/matrix_io.hpp"
#include "mcradar/solver.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string seed;
    std::vector<std::string> overrides;
};

void add_common(CLI::App *cmd, CommonArgs &args) {
    cmd->add_option("--config", args.config_path, "Key-value config file");
    cmd->add_option("--out", args.out_path, "Output path (default: stdout)");
    cmd->add_option("--seed", args.seed, "Master seed override");
    cmd->add_option("--set", args.overrides, "Override any config key, as key=value")
        ->take_all();
}

mcradar::Config load_config(const CommonArgs &args) {
    mcradar::Config cfg;
    if (!args.config_path.empty()) cfg = mcradar::Config::from_file(args.config_path);
    for (const std::string &kv : args.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw mcradar::config_error("--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!args.seed.empty()) cfg.set("seed", args.seed);
    return cfg;
}

int emit(const CommonArgs &args, const std::function<void(std::ostream &)> &writer) {
    if (args.out_path.empty()) {
        writer(std::cout);
        return 0;
    }
    std::ofstream os(args.out_path);
    if (!os) throw mcradar::io_error("cannot open for writing: " + args.out_path);
    writer(os);
    return 0;
}

int run_bounds(const CommonArgs &args) {
    const mcradar::Config cfg = load_config(args);
    const std::string mode = cfg.get_string_or("bounds.mode", "ula");
    const int k = cfg.get_int_or("bounds.k", 4);
    std::ostringstream out;
    if (mode == "ula") {
        const int m_t = cfg.get_int_or("tx.count", cfg.get_int_or("antennas", 20));
        const int m_r = cfg.get_int_or("rx.count", cfg.get_int_or("antennas", 20));
        const double spacing = cfg.get_double_or("spacing_over_lambda", 0.5);
        mcradar::UlaBoundReport rep;
        if (cfg.has("scene.angles_deg")) {
            const mcradar::TargetScene scene = mcradar::scene_from_config(cfg);
            rep = mcradar::ula_bounds_for_scene(m_t, m_r, spacing, spacing, scene.angles);
        } else {
            double xi = 0.0;
            if (cfg.has("bounds.eta"))
                xi = mcradar::xi_for_angle_band(cfg.get_double("bounds.eta"));
            else
                xi = cfg.get_double("bounds.xi");
            rep = mcradar::ula_bounds(m_t, m_r, k, xi, xi);
        }
        mcradar::write_report(out, rep);
    } else if (mode == "general") {
        const mcradar::ArrayGeometry tx = mcradar::geometry_from_config(cfg, "tx");
        const mcradar::ArrayGeometry rx = mcradar::geometry_from_config(cfg, "rx");
        const double eta = cfg.get_double_or("bounds.eta", 1.0);
        const std::string set_kind = cfg.get_string_or("bounds.admissible", "banded");
        mcradar::AdmissibleSet set;
        if (set_kind == "banded")
            set = mcradar::AdmissibleSet::banded(eta);
        else if (set_kind == "diagonal-gap")
            set = mcradar::AdmissibleSet::diagonal_gap(eta);
        else
            throw mcradar::config_error("bounds.admissible must be banded or diagonal-gap");
        const double resolution = cfg.get_double_or("bounds.resolution", 0.01);
        mcradar::write_report(out, mcradar::general_bounds(tx, rx, k, set, resolution));
    } else {
        throw mcradar::config_error("bounds.mode must be ula or general");
    }
    return emit(args, [&out](std::ostream &os) { os << out.str(); });
}

struct CompleteArgs {
    std::string obs_path;
    std::string out_path;
    std::string history_path;
    double delta = 0.0;
    bool delta_from_file = false;
    mcradar::SolverParams params;
};

int run_complete(const CompleteArgs &args) {
    const mcradar::PartialObservation obs = mcradar::load_observation(args.obs_path);
    const double delta = args.delta_from_file ? obs.noise_level : args.delta;
    const mcradar::CompletionResult result =
        delta > 0.0 ? mcradar::noisy_complete(obs, delta, args.params)
                    : mcradar::svt_complete(obs, args.params);
    mcradar::save_matrix(args.out_path, result.estimate);
    if (!args.history_path.empty()) {
        std::ofstream hs(args.history_path);
        if (!hs) throw mcradar::io_error("cannot open for writing: " + args.history_path);
        hs << "iter,residual\n";
        for (std::size_t i = 0; i < result.residual_history.size(); ++i)
            hs << (i + 1) << ',' << mcradar::format_double(result.residual_history[i]) << '\n';
    }
    std::cerr << (result.converged ? "converged" : "did not converge") << " after "
              << result.iterations << " iterations\n";
    return result.converged ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Coherence, bounds and completion testbench for colocated "
                 "MIMO-radar data matrices"};
    app.require_subcommand(1);

    CommonArgs sweep_args, eta_args, surface_args, recovery_args, bounds_args;
    add_common(app.add_subcommand("coherence-sweep",
                                  "Measured coherence vs antenna count, with bounds"),
               sweep_args);
    add_common(app.add_subcommand("eta-sweep", "Bound curves for angle-band margins"),
               eta_args);
    add_common(app.add_subcommand("surface", "Array-kernel surface on [-pi, pi]^2"),
               surface_args);
    add_common(app.add_subcommand("recovery-phase",
                                  "Completion success probability vs sample count"),
               recovery_args);
    add_common(app.add_subcommand("bounds", "Evaluate coherence bounds for one setup"),
               bounds_args);

    CompleteArgs complete_args;
    auto *complete = app.add_subcommand("complete", "Complete a serialized observation");
    complete->add_option("--obs", complete_args.obs_path, "Observation file")->required();
    complete->add_option("--out", complete_args.out_path, "Estimate output file")->required();
    complete->add_option("--history", complete_args.history_path, "Residual history CSV");
    complete->add_option("--delta", complete_args.delta, "Noise-ball radius (0: equality)");
    complete->add_flag("--delta-from-file", complete_args.delta_from_file,
                       "Use the delta recorded in the observation file");
    complete->add_option("--tau", complete_args.params.threshold, "Shrinkage threshold");
    complete->add_option("--step", complete_args.params.step, "Dual step size");
    complete->add_option("--max-iters", complete_args.params.max_iters, "Iteration cap");
    complete->add_option("--tol", complete_args.params.rel_stop_tol, "Relative stop tolerance");

    mcradar::AcceptanceOptions acceptance_opts;
    std::string acceptance_out;
    bool skip_solver = false;
    auto *acceptance = app.add_subcommand("acceptance", "Run the acceptance suite");
    acceptance->add_option("--seed", acceptance_opts.seed, "Suite seed");
    acceptance->add_option("--scale", acceptance_opts.scale, "Trial-count multiplier");
    acceptance->add_option("--out", acceptance_out, "Report path (default: stdout)");
    acceptance->add_flag("--skip-solver", skip_solver, "Skip the completion criteria");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("coherence-sweep"))
            return emit(sweep_args, [&](std::ostream &os) {
                mcradar::run_coherence_sweep(load_config(sweep_args), os);
            });
        if (app.got_subcommand("eta-sweep"))
            return emit(eta_args, [&](std::ostream &os) {
                mcradar::run_eta_sweep(load_config(eta_args), os);
            });
        if (app.got_subcommand("surface"))
            return emit(surface_args, [&](std::ostream &os) {
                mcradar::run_surface(load_config(surface_args), os);
            });
        if (app.got_subcommand("recovery-phase"))
            return emit(recovery_args, [&](std::ostream &os) {
                mcradar::run_recovery_phase(load_config(recovery_args), os);
            });
        if (app.got_subcommand("bounds")) return run_bounds(bounds_args);
        if (app.got_subcommand("complete")) return run_complete(complete_args);
        if (app.got_subcommand("acceptance")) {
            acceptance_opts.include_solver = !skip_solver;
            const auto results = mcradar::run_acceptance(acceptance_opts);
            int failures = 0;
            if (acceptance_out.empty()) {
                failures = mcradar::print_acceptance(results, std::cout);
            } else {
                std::ofstream os(acceptance_out);
                if (!os) throw mcradar::io_error("cannot open for writing: " + acceptance_out);
                failures = mcradar::print_acceptance(results, os);
            }
            return failures == 0 ? 0 : 1;
        }
    } catch (const mcradar::config_error &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const mcradar::io_error &e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
