// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>

#include "mcradar/config.hpp"
#include "mcradar/geometry.hpp"
#include "mcradar/rng.hpp"

namespace mcradar {

// Scene with angles i.i.d. uniform on (-pi/2, pi/2), resampled as a set
// until the pairwise wrapped separation exceeds xi_floor (strictly positive
// separation when xi_floor == 0). Reflections have magnitude in [0.5, 1.5).
TargetScene random_scene(int k_targets, double xi_floor, double d_over_lambda, CounterRng &rng);

// Per-trial seed derivation for Monte Carlo loops; stable across runs.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial);

// Fixed-scene coherence versus antenna count for a half-wavelength ULA
// pair, with the matching bound. CSV: M,mu_measured,mu0_bound,feasible.
void run_coherence_sweep(const Config &cfg, std::ostream &csv);

// Worst-case bound curves over antenna count for a family of angle-band
// margins. CSV: eta,M,mu0_bound,feasible.
void run_eta_sweep(const Config &cfg, std::ostream &csv);

// Array-kernel surface on [-pi, pi]^2. CSV: x,y,value.
void run_surface(const Config &cfg, std::ostream &csv);

// Monte Carlo completion success versus sample count.
// CSV: m,trials,successes,mean_rel_err.
void run_recovery_phase(const Config &cfg, std::ostream &csv);

// The documented default four-target scene used by the sweeps when the
// config does not fix one.
TargetScene default_sweep_scene();

} // namespace mcradar
