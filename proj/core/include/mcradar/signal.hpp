// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mcradar/geometry.hpp"
#include "mcradar/types.hpp"

namespace mcradar {

/// Set of observed matrix coordinates, stored sorted row-major and distinct.
struct SampleMask {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> indices;

    std::size_t size() const { return indices.size(); }
};

/// Sampled, possibly noisy entries of a matrix. noise_level records the
/// realized Frobenius norm of the sampled noise (exact, since the noise is
/// generated here).
struct PartialObservation {
    SampleMask mask;
    std::vector<cdouble> values; // one per mask index, same order
    double noise_level = 0.0;
};

// M x K matrix of array responses: entry (l, k) = exp(j*2*pi*r(l)' * t(theta_k))
// with t(theta) = (cos theta, sin theta). Vandermonde for linear arrays.
ComplexMatrix steering_matrix(const ArrayGeometry &geom, std::span<const double> angles);

// K x K diagonal of reflection coefficients times the Doppler phase accrued
// over (q - 1) pulse repetition intervals.
ComplexMatrix gain_matrix(const TargetScene &scene, double wavelength);

// The M_r x M_t product of receive responses, target gains and transposed
// (not conjugated) transmit responses. Rank is at most the target count.
ComplexMatrix data_matrix(const ArrayGeometry &tx, const ArrayGeometry &rx,
                          const TargetScene &scene);

// m distinct coordinates drawn uniformly without replacement; deterministic
// in (seed), independent of any noise draws made with the same seed.
SampleMask sample_uniform(Eigen::Index rows, Eigen::Index cols, std::size_t m,
                          std::uint64_t seed);

// Gathers delta on the mask and adds circularly-symmetric complex gaussian
// noise with per-entry std noise_std.
PartialObservation observe(const ComplexMatrix &delta, const SampleMask &mask,
                           double noise_std, std::uint64_t seed);

// Scatters observed values into a zero matrix of the mask's shape.
ComplexMatrix scatter(const PartialObservation &obs);

void validate(const SampleMask &mask);

} // namespace mcradar
