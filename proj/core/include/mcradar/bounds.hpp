// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>

#include "mcradar/geometry.hpp"
#include "mcradar/types.hpp"

namespace mcradar {

// Squared Dirichlet kernel sin^2(pi*M*x) / sin^2(pi*x), with the removable
// singularity at integer x evaluated as M^2. Even and 1-periodic.
double dirichlet_sq(int num_antennas, double x);

// Distance from x >= 0 to the nearest integer, in [0, 1/2].
double wrap_g(double x);

// Minimum wrapped separation of scaled sine differences over all distinct
// angle pairs. Needs at least two angles.
double min_separation_xi(double spacing_over_lambda, std::span<const double> angles);

// Certified over-estimate of sup of dirichlet_sq(M, x) over [xi, 1/2]:
// grid at step <= 1/(64*M), golden-section refinement around the best grid
// points, then a derivative-bound inflation of the refinement bracket.
double beta_sup_finite(int num_antennas, double xi);

// Supremum of the squared kernel over [xi, 1/2] uniformly over all (real)
// antenna counts: closed form 1 / sin^2(pi*xi).
double beta_sup_uniform(double xi);

/// Coherence bound evaluation for a linear-array pair. Undefined fields are
/// NaN: xi values at k_targets == 1, mu bounds when infeasible. k_max is the
/// largest feasible target count given the kernel suprema.
struct UlaBoundReport {
    double xi_t = 0.0, xi_r = 0.0, xi = 0.0;
    double beta_t = 0.0, beta_r = 0.0;
    double beta_uniform = 0.0; // NaN unless xi > 0
    double mu0_bound = 0.0;
    double mu1_bound = 0.0;
    double k_max = 0.0;
    bool feasible = false;
    int m_t = 0, m_r = 0, k_targets = 0;
};

UlaBoundReport ula_bounds(int m_t, int m_r, int k_targets, double xi_t, double xi_r);

// Convenience: derive xi from the scene angles first (half-wavelength
// spacings given as d/lambda per side).
UlaBoundReport ula_bounds_for_scene(int m_t, int m_r, double dt_over_lambda,
                                    double dr_over_lambda, std::span<const double> angles);

// Guaranteed wrapped separation when every pairwise angle difference lies in
// the band [eta, pi - eta] with half-wavelength spacing: 1 - cos(eta/2).
// Valid for eta in (0, pi/2].
double xi_for_angle_band(double eta);

// Squared magnitude of the array kernel
// |sum_m exp(j*2*pi*r(m)' (t(x) - t(y)))|^2 for a general planar array.
double phi_general(const ArrayGeometry &geom, double x, double y);

/// Region of admissible angle pairs: membership predicate plus a bounding
/// box for grid search.
struct AdmissibleSet {
    std::function<bool(double, double)> contains;
    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;

    // [-pi/2, pi/2]^2 with eta <= |y - x| <= pi - eta.
    static AdmissibleSet banded(double eta);
    // [-pi/2, pi/2]^2 with eta <= |y - x| <= pi.
    static AdmissibleSet diagonal_gap(double eta);
    static AdmissibleSet single_point(double x, double y);
};

// Supremum of phi_general over the admissible set: coarse grid at the given
// resolution, shrinking-box ascent from the best grid points, then a
// gradient-bound inflation of the final box. Clamped to M^2. The resolution
// must resolve the kernel's finest lobe (of order the reciprocal normalized
// aperture); halve it until the value stabilizes.
double general_beta(const ArrayGeometry &geom, const AdmissibleSet &admissible,
                    double resolution);

// The inflation general_beta adds after refinement at this resolution.
double general_beta_margin(const ArrayGeometry &geom, double resolution);

struct GeneralBoundReport {
    double beta_t = 0.0, beta_r = 0.0;
    double mu0_bound = 0.0; // NaN when infeasible
    double mu1_bound = 0.0;
    double k_max = 0.0;
    bool feasible = false;
    double grid_resolution = 0.0;
    int m_t = 0, m_r = 0, k_targets = 0;
};

GeneralBoundReport general_bounds(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                  int k_targets, const AdmissibleSet &admissible,
                                  double resolution);

/// Two-sided trace bounds on the extreme eigenvalues of a Hermitian matrix
/// (Wolkowicz-Styan). All brackets collapse to tau for 1x1 input.
struct EigenBracket {
    double lambda_min_lo = 0.0, lambda_min_hi = 0.0;
    double lambda_max_lo = 0.0, lambda_max_hi = 0.0;
    double tau = 0.0, s = 0.0;
};

EigenBracket wolkowicz_brackets(const ComplexMatrix &hermitian);

/// Constants left unspecified by the recovery theory; defaults are
/// placeholders, so threshold values are order-of-magnitude only.
struct ThresholdConstants {
    double c = 1.0;
    double c1 = 1.0;
    double c2 = 1.0;
    double beta = 3.0; // must be > 2
};

struct SampleThresholds {
    double basic = 0.0;            // C max{mu1^2, mu0^(1/2) mu1, mu0 N^(1/4)} N r beta log N
    double basic_improved = 0.0;   // C mu0 N^(6/5) r beta log N
    bool improved_eligible = false; // r <= N^(1/5) / mu0
    double strong_quartic = 0.0;   // C1 mu^4 N r^2 log^2 N
    double strong_quadratic = 0.0; // C2 mu^2 N r log^6 N
    double smallest = 0.0;
    std::string smallest_name;
};

SampleThresholds sample_requirement(int n, int r, double mu0, double mu1, double mu_strong,
                                    const ThresholdConstants &constants = {});

void write_report(std::ostream &os, const UlaBoundReport &report);
void write_report(std::ostream &os, const GeneralBoundReport &report);

} // namespace mcradar
