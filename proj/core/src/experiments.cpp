// SPDX-License-Identifier: Apache-2.0
#include "mcradar/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include "mcradar/bounds.hpp"
#include "mcradar/coherence.hpp"
#include "mcradar/errors.hpp"
#include "mcradar/matrix_io.hpp"
#include "mcradar/signal.hpp"
#include "mcradar/solver.hpp"

namespace mcradar {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void csv_preamble(std::ostream &os, const Config &cfg, std::uint64_t seed,
                  const char *columns) {
    char hashbuf[32];
    std::snprintf(hashbuf, sizeof(hashbuf), "%016llx",
                  static_cast<unsigned long long>(cfg.hash()));
    os << "# config=" << hashbuf << " seed=" << seed << '\n';
    os << columns << '\n';
}

std::vector<int> antenna_sweep(const Config &cfg, int from_def, int to_def, int step_def) {
    const int from = cfg.get_int_or("sweep.m_from", from_def);
    const int to = cfg.get_int_or("sweep.m_to", to_def);
    const int step = cfg.get_int_or("sweep.m_step", step_def);
    if (from < 1 || to < from || step < 1)
        throw config_error("antenna sweep needs 1 <= m_from <= m_to and step >= 1");
    std::vector<int> values;
    for (int m = from; m <= to; m += step) values.push_back(m);
    return values;
}

} // namespace

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
    return master_seed ^ (0x9e3779b97f4a7c15ULL * (trial + 1));
}

TargetScene random_scene(int k_targets, double xi_floor, double d_over_lambda,
                         CounterRng &rng) {
    if (k_targets < 1) throw invalid_parameter_error("scene needs at least one target");
    if (xi_floor < 0.0 || xi_floor > 0.5)
        throw invalid_parameter_error("xi floor must lie in [0, 1/2]");
    TargetScene scene;
    scene.pulse_index = 2;
    scene.pulse_repetition = 1e-3;
    for (int attempt = 0; attempt < 100000; ++attempt) {
        scene.angles.clear();
        for (int k = 0; k < k_targets; ++k)
            scene.angles.push_back((rng.next_double() - 0.5) * kPi);
        if (k_targets == 1) break;
        const double xi = min_separation_xi(d_over_lambda, scene.angles);
        if (xi > xi_floor || (xi_floor == 0.0 && xi > 0.0)) break;
        if (attempt == 99999)
            throw invalid_parameter_error("could not draw a scene above the xi floor");
    }
    for (int k = 0; k < k_targets; ++k) {
        const double mag = 0.5 + rng.next_double();
        const double phase = 2.0 * kPi * rng.next_double();
        scene.reflections.emplace_back(mag * std::cos(phase), mag * std::sin(phase));
        scene.speeds.push_back((rng.next_double() - 0.5) * 60.0);
    }
    return scene;
}

TargetScene default_sweep_scene() {
    // Four targets with sine separations well clear of the kernel
    // singularity at half-wavelength spacing (xi = 0.235).
    TargetScene scene;
    const double sines[] = {-0.78, -0.31, 0.17, 0.64};
    for (double s : sines) scene.angles.push_back(std::asin(s));
    scene.reflections.assign(4, cdouble(1.0, 0.0));
    scene.speeds.assign(4, 0.0);
    scene.pulse_index = 1;
    scene.pulse_repetition = 1e-3;
    return scene;
}

void run_coherence_sweep(const Config &cfg, std::ostream &csv) {
    const std::uint64_t seed = cfg.get_uint64_or("seed", 12345);
    const double wavelength = cfg.get_double_or("wavelength", 0.5);
    const double d_over_lambda = cfg.get_double_or("spacing_over_lambda", 0.5);
    const TargetScene scene =
        cfg.has("scene.angles_deg") ? scene_from_config(cfg) : default_sweep_scene();
    const auto sweep = antenna_sweep(cfg, 10, 100, 5);

    csv_preamble(csv, cfg, seed, "M,mu_measured,mu0_bound,feasible");
    for (int m : sweep) {
        const ArrayGeometry array = make_ula(m, d_over_lambda * wavelength, wavelength);
        const ComplexMatrix delta = data_matrix(array, array, scene);
        const CoherenceReport rep = coherence_report(delta);
        const UlaBoundReport bound =
            ula_bounds_for_scene(m, m, d_over_lambda, d_over_lambda, scene.angles);
        csv << m << ',' << format_double(std::max(rep.mu_u, rep.mu_v)) << ','
            << format_double(bound.mu0_bound) << ',' << (bound.feasible ? 1 : 0) << '\n';
    }
}

void run_eta_sweep(const Config &cfg, std::ostream &csv) {
    const std::uint64_t seed = cfg.get_uint64_or("seed", 12345);
    const int k = cfg.get_int_or("k", 4);
    std::vector<double> etas = {0.2, 0.5, 1.0, kPi / 2.0};
    if (cfg.has("sweep.eta")) etas = cfg.get_double_list("sweep.eta");
    const auto sweep = antenna_sweep(cfg, 10, 100, 5);

    csv_preamble(csv, cfg, seed, "eta,M,mu0_bound,feasible");
    for (double eta : etas) {
        const double xi = xi_for_angle_band(eta);
        for (int m : sweep) {
            const UlaBoundReport bound = ula_bounds(m, m, k, xi, xi);
            csv << format_double(eta) << ',' << m << ',' << format_double(bound.mu0_bound)
                << ',' << (bound.feasible ? 1 : 0) << '\n';
        }
    }
}

void run_surface(const Config &cfg, std::ostream &csv) {
    const std::uint64_t seed = cfg.get_uint64_or("seed", 12345);
    Config defaults = cfg;
    if (!defaults.has("wavelength")) defaults.set("wavelength", "0.5");
    if (!defaults.has("array.kind")) defaults.set("array.kind", "uca");
    if (!defaults.has("array.count")) defaults.set("array.count", "20");
    if (!defaults.has("array.radius")) defaults.set("array.radius", "0.5");
    const ArrayGeometry array = geometry_from_config(defaults, "array");
    const double resolution = defaults.get_double_or("surface.resolution", 0.05);
    if (!(resolution > 0.0)) throw config_error("surface.resolution must be positive");

    const auto steps = static_cast<std::size_t>(std::floor(2.0 * kPi / resolution));
    std::vector<double> grid;
    for (std::size_t i = 0; i <= steps; ++i)
        grid.push_back(i == steps ? kPi : -kPi + static_cast<double>(i) * resolution);

    csv_preamble(csv, cfg, seed, "x,y,value");
    for (double x : grid)
        for (double y : grid)
            csv << format_double(x) << ',' << format_double(y) << ','
                << format_double(phi_general(array, x, y)) << '\n';
}

void run_recovery_phase(const Config &cfg, std::ostream &csv) {
    const std::uint64_t seed = cfg.get_uint64_or("seed", 12345);
    const double wavelength = cfg.get_double_or("wavelength", 0.5);
    const double d_over_lambda = cfg.get_double_or("spacing_over_lambda", 0.5);
    const int m_antennas = cfg.get_int_or("antennas", 64);
    const int k = cfg.get_int_or("scene.random.k", 3);
    const double xi_floor = cfg.get_double_or("scene.random.xi_floor", 0.1);
    const int trials = cfg.get_int_or("trials", 50);
    const double noise_std = cfg.get_double_or("noise.std", 0.0);
    if (trials < 1) throw config_error("trials must be >= 1");

    SolverParams params;
    params.threshold = cfg.get_double_or("solver.tau", 0.0);
    params.step = cfg.get_double_or("solver.step", 0.0);
    params.max_iters = cfg.get_int_or("solver.max_iters", 1000);
    params.rel_stop_tol = cfg.get_double_or("solver.tol", 1e-5);

    const auto total = static_cast<std::size_t>(m_antennas) * static_cast<std::size_t>(m_antennas);
    std::vector<std::size_t> samples;
    if (cfg.has("sweep.samples")) {
        for (double v : cfg.get_double_list("sweep.samples"))
            samples.push_back(static_cast<std::size_t>(v));
    } else {
        for (double frac = 0.1; frac < 0.75; frac += 0.1)
            samples.push_back(static_cast<std::size_t>(std::round(frac * static_cast<double>(total))));
    }

    const ArrayGeometry array =
        make_ula(m_antennas, d_over_lambda * wavelength, wavelength);

    csv_preamble(csv, cfg, seed, "m,trials,successes,mean_rel_err");
    for (std::size_t m : samples) {
        if (m < 1 || m > total) throw config_error("sample count outside [1, M^2]");
        int successes = 0;
        double err_sum = 0.0;
        for (int t = 0; t < trials; ++t) {
            const std::uint64_t ts = trial_seed(seed, static_cast<std::uint64_t>(t));
            CounterRng scene_rng(ts, CounterRng::kSceneStream);
            const TargetScene scene = random_scene(k, xi_floor, d_over_lambda, scene_rng);
            const ComplexMatrix delta = data_matrix(array, array, scene);
            const SampleMask mask = sample_uniform(delta.rows(), delta.cols(), m, ts);
            const PartialObservation obs = observe(delta, mask, noise_std, ts);
            const CompletionResult result = svt_complete(obs, params);
            const RecoveryError err = recovery_error(delta, result.estimate);
            if (err.rel_frob <= 1e-3) ++successes;
            err_sum += err.rel_frob;
        }
        csv << m << ',' << trials << ',' << successes << ','
            << format_double(err_sum / trials) << '\n';
    }
}

} // namespace mcradar
