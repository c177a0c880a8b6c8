// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

#include "mcradar/geometry.hpp"
#include "mcradar/types.hpp"

namespace mcradar {

/// Compact SVD truncated at the numerical rank: factors keep only singular
/// values above tolerance * sigma_1.
struct SvdFactors {
    ComplexMatrix u;                 // N1 x r, orthonormal columns
    Eigen::VectorXd singular_values; // descending, length r
    ComplexMatrix v;                 // N2 x r, orthonormal columns
    int rank = 0;
    double tolerance = 0.0; // relative threshold actually used
};

struct CoherenceReport {
    double mu_u = 0.0;   // column-space coherence, in [1, N1/r]
    double mu_v = 0.0;   // row-space coherence, in [1, N2/r]
    double mu_s_u = 0.0; // strong coherence of the column space
    double mu_s_v = 0.0;
    double mu1 = 0.0; // max-entry parameter of the singular sign matrix
    int rank = 0;
    double tol = 0.0;
};

// Default numerical-rank rule: max(N1, N2) * 2^-52 relative to sigma_1.
double default_rank_tolerance(Eigen::Index rows, Eigen::Index cols);

SvdFactors compact_svd(const ComplexMatrix &m);
SvdFactors compact_svd(const ComplexMatrix &m, double rel_tol);

// (N/r) * max row energy of an orthonormal basis. Throws if the columns are
// not orthonormal to 1e-8.
double subspace_coherence(const ComplexMatrix &basis);

// max over (i,j) of |(N/r) <e_i, P e_j> - [i==j]| with P the orthogonal
// projector onto the column span. O(N^2 r), projector rows formed lazily.
double strong_coherence(const ComplexMatrix &basis);

// sqrt(N1*N2/r) * max entry magnitude of U V^H (singular values excluded).
double mu1_parameter(const SvdFactors &f);

CoherenceReport coherence_report(const ComplexMatrix &m);
CoherenceReport coherence_report(const ComplexMatrix &m, double rel_tol);

void write_report(std::ostream &os, const CoherenceReport &report);

// Restricts the scene to a maximal subset of angles pairwise separated by
// more than eps, keeping first occurrences.
TargetScene dedup_angles(const TargetScene &scene, double eps = 0.0);

} // namespace mcradar
