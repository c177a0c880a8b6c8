// SPDX-License-Identifier: Apache-2.0
#include "mcradar/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "mcradar/bounds.hpp"
#include "mcradar/coherence.hpp"
#include "mcradar/experiments.hpp"
#include "mcradar/matrix_io.hpp"
#include "mcradar/rng.hpp"
#include "mcradar/signal.hpp"
#include "mcradar/solver.hpp"

namespace mcradar {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int scaled(int n, double scale) { return std::max(1, static_cast<int>(std::lround(n * scale))); }

struct Checker {
    bool ok = true;
    std::ostringstream detail;

    void require(bool condition, const std::string &message) {
        if (!condition) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << message;
        }
    }
    void note(const std::string &message) {
        if (detail.tellp() > 0) detail << "; ";
        detail << message;
    }
};

CriterionResult finish(const std::string &name, Checker &chk, Clock::time_point start,
                       double runtime_limit, bool enforce_runtime) {
    CriterionResult result;
    result.name = name;
    result.seconds = seconds_since(start);
    if (enforce_runtime && runtime_limit > 0.0 && result.seconds > runtime_limit)
        chk.require(false, "runtime " + format_double(result.seconds) + "s exceeds " +
                               format_double(runtime_limit) + "s");
    result.passed = chk.ok;
    result.detail = chk.detail.str();
    return result;
}

// Shared material for the bound-validity, strong-coherence-chain and
// gram-eigenvalue criteria: random half-wavelength ULA scenes with measured
// coherence and evaluated bounds.
struct UlaInstance {
    int m = 0;
    int k = 0;
    double xi = 0.0;
    double beta = 0.0; // after any deflation
    bool feasible = false;
    double mu0_bound = 0.0;
    double mu1_bound = 0.0;
    double lambda_min = 0.0; // smallest eigenvalue of the steering Gram
    CoherenceReport report;
};

std::vector<UlaInstance> build_ula_ensemble(const AcceptanceOptions &opts, int count) {
    std::vector<UlaInstance> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        CounterRng rng(trial_seed(opts.seed, static_cast<std::uint64_t>(i)),
                       CounterRng::kSceneStream);
        UlaInstance inst;
        inst.k = 2 + static_cast<int>(rng.next_below(4));  // {2..5}
        inst.m = 8 + static_cast<int>(rng.next_below(57)); // {8..64}
        const TargetScene scene = random_scene(inst.k, 0.0, 0.5, rng);
        const ArrayGeometry array = make_ula(inst.m, 0.25, 0.5);

        inst.xi = min_separation_xi(0.5, scene.angles);
        inst.beta = beta_sup_finite(inst.m, inst.xi) * opts.beta_deflation;
        const double root_beta = std::sqrt(inst.beta);
        inst.feasible = inst.k * root_beta <= inst.m;
        if (inst.feasible) {
            const double denom = inst.m - (inst.k - 1) * root_beta;
            inst.mu0_bound = inst.m / denom;
            inst.mu1_bound = inst.mu0_bound * std::sqrt(static_cast<double>(inst.k));
        }

        const ComplexMatrix delta = data_matrix(array, array, scene);
        inst.report = coherence_report(delta);

        const ComplexMatrix xt = steering_matrix(array, scene.angles);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(ComplexMatrix(xt.adjoint() * xt),
                                                         Eigen::EigenvaluesOnly);
        inst.lambda_min = eig.eigenvalues()(0);
        out.push_back(std::move(inst));
    }
    return out;
}

CriterionResult criterion_k1_optimal_coherence(const AcceptanceOptions &opts) {
    const auto start = Clock::now();
    Checker chk;
    TargetScene scene;
    scene.angles = {0.3};
    scene.reflections = {cdouble(1.0, 0.5)};
    scene.speeds = {5.0};
    scene.pulse_index = 2;
    scene.pulse_repetition = 1e-3;

    double worst = 0.0;
    for (int m = 2; m <= 64; ++m) {
        const ArrayGeometry geoms[] = {make_ula(m, 0.25, 0.5), make_uca(m, 0.5, 0.5),
                                       make_spiral(m, 0.08, 0.5)};
        for (const ArrayGeometry &geom : geoms) {
            const ComplexMatrix delta = data_matrix(geom, geom, scene);
            const CoherenceReport rep = coherence_report(delta);
            worst = std::max({worst, std::abs(rep.mu_u - 1.0), std::abs(rep.mu_v - 1.0)});
            chk.require(rep.rank == 1, "rank != 1 at M=" + std::to_string(m));
        }
    }
    chk.require(worst <= 1e-10, "max |mu - 1| = " + format_double(worst));
    chk.note("max |mu - 1| = " + format_double(worst));
    return finish("k1-optimal-coherence", chk, start, 1.0, opts.scale == 1.0);
}

CriterionResult criterion_bound_validity(const AcceptanceOptions &opts,
                                         const std::vector<UlaInstance> &ensemble) {
    const auto start = Clock::now();
    Checker chk;
    int feasible = 0, violations = 0;
    double worst_gap = -1.0;
    for (const UlaInstance &inst : ensemble) {
        if (!inst.feasible) continue;
        ++feasible;
        const double mu_gap = std::max(inst.report.mu_u, inst.report.mu_v) - inst.mu0_bound;
        const double mu1_gap = inst.report.mu1 - inst.mu1_bound;
        worst_gap = std::max({worst_gap, mu_gap, mu1_gap});
        if (mu_gap > 1e-9 || mu1_gap > 1e-9) ++violations;
        if (opts.beta_deflation == 1.0) {
            // The ensemble evaluates the bound formula directly so the
            // deflation hook can perturb it; cross-check the library path.
            const UlaBoundReport lib = ula_bounds(inst.m, inst.m, inst.k, inst.xi, inst.xi);
            chk.require(lib.feasible && std::abs(lib.mu0_bound - inst.mu0_bound) <= 1e-12,
                        "ula_bounds mismatch at M=" + std::to_string(inst.m));
        }
    }
    chk.require(feasible > 0, "no feasible instances drawn");
    chk.require(violations == 0, std::to_string(violations) + " bound violations");
    chk.note(std::to_string(feasible) + "/" + std::to_string(ensemble.size()) +
             " feasible, worst gap " + format_double(worst_gap));
    return finish("ula-bound-validity", chk, start, 120.0, opts.scale == 1.0);
}

CriterionResult criterion_asymptotic_optimality(const AcceptanceOptions &) {
    const auto start = Clock::now();
    Checker chk;

    // Generic four-target scene: the measured coherence reaches the optimum
    // at M = 200 and stays under the evaluated bound, whose curve decreases
    // monotonically. (The measured curve itself oscillates at the 1/M scale,
    // so the fine-grained monotonicity is checked on the bound and, below,
    // on a scene with exact steering orthogonality at the sweep points.)
    const TargetScene scene = default_sweep_scene();
    const double xi = min_separation_xi(0.5, scene.angles);
    chk.require(xi >= 0.1, "default scene xi below 0.1");

    double prev_bound = 0.0;
    double worst_bound_rise = -1.0;
    double mu_at_200 = 0.0;
    for (int m = 20; m <= 200; m += 5) {
        const ArrayGeometry array = make_ula(m, 0.25, 0.5);
        const CoherenceReport rep = coherence_report(data_matrix(array, array, scene));
        const double mu = std::max(rep.mu_u, rep.mu_v);
        const UlaBoundReport bound = ula_bounds(m, m, 4, xi, xi);
        chk.require(bound.feasible, "bound infeasible at M=" + std::to_string(m));
        chk.require(mu <= bound.mu0_bound + 1e-9,
                    "measured exceeds bound at M=" + std::to_string(m));
        if (m > 20) worst_bound_rise = std::max(worst_bound_rise, bound.mu0_bound - prev_bound);
        prev_bound = bound.mu0_bound;
        if (m == 200) mu_at_200 = mu;
    }
    chk.require(std::abs(mu_at_200 - 1.0) <= 0.05,
                "mu at M=200 is " + format_double(mu_at_200));
    chk.require(worst_bound_rise <= 1e-6,
                "bound curve rises by " + format_double(worst_bound_rise));

    // Sine separations on a tenth-integer lattice: every tenth antenna
    // count makes the steering columns exactly orthogonal, so the measured
    // sweep is flat at the optimum.
    TargetScene lattice;
    for (double s : {-0.8, -0.4, 0.2, 0.6}) lattice.angles.push_back(std::asin(s));
    lattice.reflections.assign(4, cdouble(1.0, 0.0));
    lattice.speeds.assign(4, 0.0);
    chk.require(min_separation_xi(0.5, lattice.angles) >= 0.1, "lattice scene xi below 0.1");
    double prev_mu = 2.0;
    double worst_measured_rise = -1.0;
    double lattice_mu_200 = 0.0;
    for (int m = 20; m <= 200; m += 10) {
        const ArrayGeometry array = make_ula(m, 0.25, 0.5);
        const CoherenceReport rep = coherence_report(data_matrix(array, array, lattice));
        const double mu = std::max(rep.mu_u, rep.mu_v);
        if (m > 20) worst_measured_rise = std::max(worst_measured_rise, mu - prev_mu);
        prev_mu = mu;
        if (m == 200) lattice_mu_200 = mu;
    }
    chk.require(worst_measured_rise <= 1e-6,
                "lattice sweep rises by " + format_double(worst_measured_rise));
    chk.require(std::abs(lattice_mu_200 - 1.0) <= 1e-10,
                "lattice mu(200) = " + format_double(lattice_mu_200));

    chk.note("mu(200) = " + format_double(mu_at_200) + ", bound rise " +
             format_double(worst_bound_rise) + ", lattice rise " +
             format_double(worst_measured_rise));
    return finish("asymptotic-optimality", chk, start, 0.0, false);
}

CriterionResult criterion_band_xi_closed_form(const AcceptanceOptions &opts) {
    const auto start = Clock::now();
    Checker chk;
    CounterRng rng(opts.seed, 0x62616e64ULL); // "band"
    const double etas[] = {0.2, 0.5, 1.0, kPi / 2.0};
    const int samples = scaled(100000, opts.scale);

    for (double eta : etas) {
        const double xi = xi_for_angle_band(eta);
        double lowest = 0.5;
        auto consider = [&lowest](double ti, double tj) {
            lowest = std::min(lowest, wrap_g(0.5 * std::abs(std::sin(ti) - std::sin(tj))));
        };
        // Parametric draw of the band: offset in [eta, pi - eta], then the
        // base angle. Covers the set even when it degenerates to a line at
        // eta = pi/2.
        for (int n = 0; n < samples; ++n) {
            const double offset = eta + (kPi - 2.0 * eta) * rng.next_double();
            const double ti = -kPi / 2.0 + (kPi - offset) * rng.next_double();
            consider(ti, ti + offset);
        }
        // Boundary curves |tj - ti| in {eta, pi - eta}, both orientations.
        for (double offset : {eta, kPi - eta}) {
            const int grid = 2000;
            for (int i = 0; i <= grid; ++i) {
                const double ti =
                    -kPi / 2.0 + (kPi - offset) * static_cast<double>(i) / grid;
                consider(ti, ti + offset);
            }
        }
        chk.require(lowest >= xi - 1e-9, "minimum undercuts closed form at eta=" +
                                             format_double(eta) + " by " +
                                             format_double(xi - lowest));
        chk.require(lowest <= xi + 1e-3, "minimum not attained at eta=" + format_double(eta) +
                                             ", gap " + format_double(lowest - xi));
    }
    const double top = xi_for_angle_band(kPi / 2.0);
    chk.require(std::abs(top - (2.0 - std::sqrt(2.0)) / 2.0) <= 1e-12,
                "eta = pi/2 closed form off by " +
                    format_double(top - (2.0 - std::sqrt(2.0)) / 2.0));
    return finish("band-xi-closed-form", chk, start, 0.0, false);
}

CriterionResult criterion_strong_coherence_chain(const AcceptanceOptions &,
                                                 const std::vector<UlaInstance> &ensemble) {
    const auto start = Clock::now();
    Checker chk;
    double worst_strong = -1.0, worst_mu1 = -1.0;
    for (const UlaInstance &inst : ensemble) {
        const double mu_max = std::max(inst.report.mu_u, inst.report.mu_v);
        const double strong_gap = std::max(inst.report.mu_s_u, inst.report.mu_s_v) - mu_max;
        const double mu1_gap =
            inst.report.mu1 - mu_max * std::sqrt(static_cast<double>(inst.report.rank));
        worst_strong = std::max(worst_strong, strong_gap);
        worst_mu1 = std::max(worst_mu1, mu1_gap);
    }
    chk.require(worst_strong <= 1e-9, "strong coherence exceeds mu by " +
                                          format_double(worst_strong));
    chk.require(worst_mu1 <= 1e-9,
                "mu1 exceeds mu*sqrt(r) by " + format_double(worst_mu1));
    chk.note("worst gaps " + format_double(worst_strong) + ", " + format_double(worst_mu1));
    return finish("strong-coherence-chain", chk, start, 0.0, false);
}

CriterionResult criterion_duplicate_angle_equality(const AcceptanceOptions &opts) {
    const auto start = Clock::now();
    Checker chk;
    const int scenes = scaled(100, opts.scale);
    double worst = 0.0;
    for (int i = 0; i < scenes; ++i) {
        CounterRng rng(trial_seed(opts.seed ^ 0xd00dULL, static_cast<std::uint64_t>(i)),
                       CounterRng::kSceneStream);
        const int k = 2 + static_cast<int>(rng.next_below(4));
        const int m = 8 + static_cast<int>(rng.next_below(25));
        TargetScene scene = random_scene(k, 0.05, 0.5, rng);
        // Duplicate one angle bitwise; fresh gain and speed for the copy.
        const auto dup = static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(k)));
        scene.angles.push_back(scene.angles[dup]);
        scene.reflections.emplace_back(0.5 + rng.next_double(), rng.next_double());
        scene.speeds.push_back(10.0 * rng.next_double());

        ArrayGeometry geom;
        switch (i % 3) {
        case 0: geom = make_ula(m, 0.25, 0.5); break;
        case 1: geom = make_uca(m, 0.5, 0.5); break;
        default: geom = make_spiral(m, 0.08, 0.5); break;
        }
        const CoherenceReport full = coherence_report(data_matrix(geom, geom, scene));
        const TargetScene dedup = dedup_angles(scene, 0.0);
        const CoherenceReport reduced = coherence_report(data_matrix(geom, geom, dedup));

        chk.require(dedup.target_count() == k, "dedup kept wrong count");
        chk.require(full.rank == reduced.rank, "rank mismatch under duplication");
        worst = std::max({worst, std::abs(full.mu_u - reduced.mu_u),
                          std::abs(full.mu_v - reduced.mu_v)});
    }
    chk.require(worst <= 1e-8, "coherence differs under duplication by " + format_double(worst));
    chk.note("worst difference " + format_double(worst));
    return finish("duplicate-angle-equality", chk, start, 0.0, false);
}

CriterionResult criterion_eigenvalue_brackets(const AcceptanceOptions &opts) {
    const auto start = Clock::now();
    Checker chk;
    CounterRng rng(opts.seed, 0x65696730ULL); // "eig0"
    const int count = scaled(1000, opts.scale);
    int inside = 0;
    for (int i = 0; i < count; ++i) {
        const auto n = static_cast<Eigen::Index>(1 + rng.next_below(8));
        ComplexMatrix g(n, n);
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c)
                g(r, c) = cdouble(rng.next_gaussian(), rng.next_gaussian());
        const ComplexMatrix h = 0.5 * (g + g.adjoint());
        const EigenBracket br = wolkowicz_brackets(h);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
        const double lo = eig.eigenvalues()(0);
        const double hi = eig.eigenvalues()(n - 1);
        const bool contained = lo >= br.lambda_min_lo - 1e-9 && lo <= br.lambda_min_hi + 1e-9 &&
                               hi >= br.lambda_max_lo - 1e-9 && hi <= br.lambda_max_hi + 1e-9;
        if (contained) ++inside;
    }
    chk.require(inside == count,
                std::to_string(count - inside) + " bracket violations of " + std::to_string(count));

    // diag(a, b, ..., b): the bracket touching the repeated block is tight.
    for (const auto &[a, b] : {std::pair{-1.5, 2.0}, std::pair{4.0, 0.5}}) {
        ComplexMatrix d = ComplexMatrix::Zero(6, 6);
        d(0, 0) = a;
        for (int i = 1; i < 6; ++i) d(i, i) = b;
        const EigenBracket br = wolkowicz_brackets(d);
        if (a < b) {
            // Five largest eigenvalues equal: outer min bracket and inner
            // max bracket are both attained.
            chk.require(std::abs(br.lambda_min_lo - a) <= 1e-10 &&
                            std::abs(br.lambda_max_lo - b) <= 1e-10,
                        "tightness fails for a < b");
        } else {
            chk.require(std::abs(br.lambda_min_hi - b) <= 1e-10 &&
                            std::abs(br.lambda_max_hi - a) <= 1e-10,
                        "tightness fails for a > b");
        }
    }
    chk.note(std::to_string(inside) + "/" + std::to_string(count) + " inside");
    return finish("eigenvalue-brackets", chk, start, 0.0, false);
}

CriterionResult criterion_gram_lambda_min(const AcceptanceOptions &,
                                          const std::vector<UlaInstance> &ensemble) {
    const auto start = Clock::now();
    Checker chk;
    double worst = 1e300;
    int feasible = 0;
    for (const UlaInstance &inst : ensemble) {
        if (!inst.feasible) continue;
        ++feasible;
        const double floor = inst.m - (inst.k - 1) * std::sqrt(inst.beta);
        worst = std::min(worst, inst.lambda_min - floor);
    }
    chk.require(feasible > 0, "no feasible instances");
    chk.require(worst >= -1e-6, "lambda_min undercuts floor by " + format_double(-worst));
    chk.note("min slack " + format_double(worst));
    return finish("gram-lambda-min-bound", chk, start, 0.0, false);
}

CriterionResult criterion_general_array_consistency(const AcceptanceOptions &) {
    const auto start = Clock::now();
    Checker chk;

    // Half-wavelength linear array evaluated through the general-array
    // kernel must reproduce the closed 1D supremum.
    const double eta = 1.0;
    const ArrayGeometry ula = make_ula(16, 0.25, 0.5);
    const double finite = beta_sup_finite(16, xi_for_angle_band(eta));
    const double general = general_beta(ula, AdmissibleSet::banded(eta), 0.002);
    chk.require(general >= finite - 1e-6,
                "general supremum below the 1D value by " + format_double(finite - general));
    chk.require(general <= finite + 1e-3 * finite + 1e-6,
                "general supremum exceeds the 1D value by " + format_double(general - finite));

    // Circular-pair surface: squared kernel equals M^2 on the diagonal and
    // is 2*pi periodic.
    const ArrayGeometry uca = make_uca(20, 0.5, 0.5);
    double worst_diag = 0.0, worst_period = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double x = -kPi + 2.0 * kPi * static_cast<double>(i) / 40.0;
        worst_diag = std::max(worst_diag, std::abs(phi_general(uca, x, x) - 400.0));
        const double y = -kPi / 2.0 + kPi * static_cast<double>(i) / 40.0;
        worst_period = std::max(
            worst_period, std::abs(phi_general(uca, -kPi, y) - phi_general(uca, kPi, y)));
        worst_period = std::max(
            worst_period, std::abs(phi_general(uca, y, -kPi) - phi_general(uca, y, kPi)));
    }
    chk.require(worst_diag <= 1e-9, "diagonal misses M^2 by " + format_double(worst_diag));
    chk.require(worst_period <= 1e-9, "periodicity off by " + format_double(worst_period));
    chk.note("1D/2D gap " + format_double(general - finite) + ", diag err " +
             format_double(worst_diag));
    return finish("general-array-consistency", chk, start, 0.0, false);
}

CriterionResult criterion_noiseless_completion(const AcceptanceOptions &opts) {
    const auto start = Clock::now();
    Checker chk;

    // Weakly certified masks amplify the observed-entry residual into the
    // unobserved entries by a few hundred; a tight stop tolerance keeps the
    // recovery comfortably under the 1e-4 line.
    SolverParams params;
    params.rel_stop_tol = 1e-8;
    params.max_iters = 5000;

    // Rank-1 with unit-modulus factors at 60% sampling.
    const int seeds = scaled(50, opts.scale);
    int successes = 0;
    for (int s = 0; s < seeds; ++s) {
        CounterRng rng(trial_seed(opts.seed ^ 0x0aceULL, static_cast<std::uint64_t>(s)),
                       CounterRng::kSceneStream);
        TargetScene scene;
        scene.angles = {(rng.next_double() - 0.5) * kPi};
        const double phase = 2.0 * kPi * rng.next_double();
        scene.reflections = {cdouble(std::cos(phase), std::sin(phase))};
        scene.speeds = {0.0};
        const ArrayGeometry array = make_ula(8, 0.25, 0.5);
        const ComplexMatrix delta = data_matrix(array, array, scene);
        const SampleMask mask = sample_uniform(8, 8, 38, trial_seed(opts.seed, s));
        const PartialObservation obs = observe(delta, mask, 0.0, trial_seed(opts.seed, s));
        const CompletionResult res = svt_complete(obs, params);
        if (recovery_error(delta, res.estimate).rel_frob <= 1e-4) ++successes;
    }
    const std::string rank1_tally =
        "rank-1 recovery " + std::to_string(successes) + "/" + std::to_string(seeds);
    chk.require(successes * 50 >= 48 * seeds, rank1_tally);
    if (chk.ok) chk.note(rank1_tally);

    // Full observation pins the estimate to the stop tolerance.
    {
        CounterRng rng(opts.seed ^ 0xffULL, CounterRng::kSceneStream);
        const TargetScene scene = random_scene(2, 0.05, 0.5, rng);
        const ArrayGeometry array = make_ula(12, 0.25, 0.5);
        const ComplexMatrix delta = data_matrix(array, array, scene);
        const SampleMask mask = sample_uniform(12, 12, 144, opts.seed);
        const CompletionResult res = svt_complete(observe(delta, mask, 0.0, opts.seed), params);
        const double rel = recovery_error(delta, res.estimate).rel_frob;
        chk.require(res.converged && rel <= params.rel_stop_tol,
                    "full-mask recovery error " + format_double(rel));
    }

    // Success probability versus sample count: nondecreasing within 95%
    // binomial bands, at most one in-band inversion; reaches 0.95 by half
    // the entries.
    const int trials = scaled(50, opts.scale);
    const std::vector<std::size_t> sample_counts = {410, 819, 1229, 1638, 2048, 2458, 2867};
    std::vector<int> wins;
    SolverParams sweep_params;
    sweep_params.rel_stop_tol = 1e-5;
    sweep_params.max_iters = 800; // below-transition rows burn the whole budget
    for (std::size_t idx = 0; idx < sample_counts.size(); ++idx) {
        const std::size_t m = sample_counts[idx];
        int ok = 0;
        for (int t = 0; t < trials; ++t) {
            const std::uint64_t ts =
                trial_seed(opts.seed ^ (0x5000ULL + idx), static_cast<std::uint64_t>(t));
            CounterRng rng(ts, CounterRng::kSceneStream);
            const TargetScene scene = random_scene(3, 0.1, 0.5, rng);
            const ArrayGeometry array = make_ula(64, 0.25, 0.5);
            const ComplexMatrix delta = data_matrix(array, array, scene);
            const PartialObservation obs =
                observe(delta, sample_uniform(64, 64, m, ts), 0.0, ts);
            const CompletionResult res = svt_complete(obs, sweep_params);
            if (recovery_error(delta, res.estimate).rel_frob <= 1e-3) ++ok;
        }
        wins.push_back(ok);
    }
    int in_band_inversions = 0;
    for (std::size_t i = 0; i + 1 < wins.size(); ++i) {
        const double p0 = static_cast<double>(wins[i]) / trials;
        const double p1 = static_cast<double>(wins[i + 1]) / trials;
        if (p1 >= p0) continue;
        const double pooled = (p0 + p1) / 2.0;
        const double band = 1.96 * std::sqrt(std::max(pooled * (1.0 - pooled) * 2.0 / trials, 0.0));
        if (p0 - p1 > band)
            chk.require(false, "significant success-rate inversion at m=" +
                                   std::to_string(sample_counts[i + 1]));
        else
            ++in_band_inversions;
    }
    chk.require(in_band_inversions <= 1,
                std::to_string(in_band_inversions) + " in-band inversions");
    bool reaches = false;
    for (std::size_t i = 0; i < wins.size(); ++i)
        if (sample_counts[i] <= 2048 && wins[i] * 20 >= 19 * trials) reaches = true;
    chk.require(reaches, "success rate never reaches 0.95 by m = 2048");
    {
        std::ostringstream rates;
        for (int w : wins) rates << ' ' << w;
        chk.note("sweep successes" + rates.str() + " of " + std::to_string(trials));
    }
    return finish("noiseless-completion", chk, start, 600.0, opts.scale == 1.0);
}

CriterionResult criterion_noisy_stability(const AcceptanceOptions &opts) {
    const auto start = Clock::now();
    Checker chk;

    const double formula = stability_bound(10, 10, 50, 0.1);
    chk.require(std::abs(formula - 3.0284) <= 1e-3,
                "stability formula value " + format_double(formula));

    SolverParams params;
    params.rel_stop_tol = 1e-6;
    params.max_iters = 4000;
    const int instances = scaled(20, opts.scale);
    int matched = 0;
    double worst_margin = 1e300;
    for (int i = 0; i < instances; ++i) {
        const std::uint64_t ts = trial_seed(opts.seed ^ 0x401eULL, static_cast<std::uint64_t>(i));
        CounterRng rng(ts, CounterRng::kSceneStream);
        const TargetScene scene = random_scene(2, 0.1, 0.5, rng);
        const ArrayGeometry array = make_ula(16, 0.25, 0.5);
        const ComplexMatrix delta = data_matrix(array, array, scene);
        const SampleMask mask = sample_uniform(16, 16, 179, ts);

        const CompletionResult clean = svt_complete(observe(delta, mask, 0.0, ts), params);
        if (recovery_error(delta, clean.estimate).rel_frob > 1e-3) continue;
        ++matched;

        const PartialObservation noisy = observe(delta, mask, 0.05, ts);
        const CompletionResult res = noisy_complete(noisy, noisy.noise_level, params);
        const double err = recovery_error(delta, res.estimate).abs_frob;
        const double bound = stability_bound(16, 16, 179, noisy.noise_level);
        worst_margin = std::min(worst_margin, bound - err);
        chk.require(err <= bound, "noisy error " + format_double(err) + " exceeds bound " +
                                      format_double(bound));
    }
    chk.require(matched > 0, "no exactly-recovered noiseless instances");
    chk.note(std::to_string(matched) + " matched instances, min margin " +
             format_double(worst_margin));
    return finish("noisy-completion-stability", chk, start, 0.0, false);
}

CriterionResult criterion_sample_count_formulas(const AcceptanceOptions &) {
    const auto start = Clock::now();
    Checker chk;

    // Spot value evaluated with constants C = C1 = C2 = 1, beta = 3.
    {
        const double mu = std::sqrt(3.0);
        const SampleThresholds t = sample_requirement(64, 3, std::sqrt(3.0), mu, mu);
        const double logn = std::log(64.0);
        const double expect_quadratic = 3.0 * 64.0 * 3.0 * std::pow(logn, 6.0);
        chk.require(std::abs(t.strong_quadratic - expect_quadratic) <=
                        1e-9 * expect_quadratic,
                    "quadratic branch mismatch");
        const double expect_quartic = 9.0 * 64.0 * 9.0 * logn * logn;
        chk.require(std::abs(t.strong_quartic - expect_quartic) <= 1e-9 * expect_quartic,
                    "quartic branch mismatch");
        const double lead = std::max({mu * mu, std::sqrt(std::sqrt(3.0)) * mu,
                                      std::sqrt(3.0) * std::pow(64.0, 0.25)});
        const double expect_basic = lead * 64.0 * 3.0 * 3.0 * logn;
        chk.require(std::abs(t.basic - expect_basic) <= 1e-9 * expect_basic,
                    "basic branch mismatch");
    }
    // Parameter floor: everything proportional to N polylog N.
    {
        const SampleThresholds t = sample_requirement(64, 1, 1.0, 1.0, 1.0);
        const double logn = std::log(64.0);
        chk.require(std::abs(t.basic - std::pow(64.0, 1.25) * 3.0 * logn) <= 1e-6,
                    "floor basic mismatch");
        chk.require(t.improved_eligible, "floor improved eligibility");
        chk.require(std::abs(t.basic_improved - std::pow(64.0, 1.2) * 3.0 * logn) <= 1e-6,
                    "floor improved mismatch");
    }
    // Eligibility flag matches the inequality exactly on both sides.
    {
        const double mu0 = 1.3;
        const double edge = std::pow(100.0, 0.2) / mu0;
        const int r_below = static_cast<int>(std::floor(edge));
        chk.require(sample_requirement(100, r_below, mu0, 1.0, 1.0).improved_eligible,
                    "eligibility false below the edge");
        chk.require(!sample_requirement(100, r_below + 1, mu0, 1.0, 1.0).improved_eligible,
                    "eligibility true above the edge");
    }
    return finish("sample-count-formulas", chk, start, 0.0, false);
}

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &opts) {
    std::vector<CriterionResult> results;
    results.push_back(criterion_k1_optimal_coherence(opts));

    const auto ensemble_start = Clock::now();
    const std::vector<UlaInstance> ensemble = build_ula_ensemble(opts, scaled(500, opts.scale));
    const double ensemble_seconds = seconds_since(ensemble_start);

    {
        CriterionResult r = criterion_bound_validity(opts, ensemble);
        r.seconds += ensemble_seconds; // generation time counts against its budget
        if (opts.scale == 1.0 && r.seconds > 120.0 && r.passed) {
            r.passed = false;
            r.detail += "; runtime " + format_double(r.seconds) + "s exceeds 120s";
        }
        results.push_back(std::move(r));
    }
    results.push_back(criterion_asymptotic_optimality(opts));
    results.push_back(criterion_band_xi_closed_form(opts));
    results.push_back(criterion_strong_coherence_chain(opts, ensemble));
    results.push_back(criterion_duplicate_angle_equality(opts));
    results.push_back(criterion_eigenvalue_brackets(opts));
    results.push_back(criterion_gram_lambda_min(opts, ensemble));
    results.push_back(criterion_general_array_consistency(opts));
    if (opts.include_solver) {
        results.push_back(criterion_noiseless_completion(opts));
        results.push_back(criterion_noisy_stability(opts));
    }
    results.push_back(criterion_sample_count_formulas(opts));
    return results;
}

int print_acceptance(const std::vector<CriterionResult> &results, std::ostream &os) {
    int failures = 0;
    for (const CriterionResult &r : results) {
        if (!r.passed) ++failures;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", r.seconds);
        os << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << buf << "s)";
        if (!r.detail.empty()) os << ": " << r.detail;
        os << '\n';
    }
    return failures;
}

} // namespace mcradar
