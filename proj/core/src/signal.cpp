// SPDX-License-Identifier: Apache-2.0
#include "mcradar/signal.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "mcradar/errors.hpp"
#include "mcradar/rng.hpp"

namespace mcradar {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

void validate(const SampleMask &mask) {
    if (mask.rows < 1 || mask.cols < 1)
        throw invalid_parameter_error("mask shape must be positive");
    for (const auto &[i, j] : mask.indices)
        if (i < 0 || i >= mask.rows || j < 0 || j >= mask.cols)
            throw invalid_parameter_error("mask index out of range");
    auto sorted = mask.indices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw invalid_parameter_error("mask indices must be distinct");
}

ComplexMatrix steering_matrix(const ArrayGeometry &geom, std::span<const double> angles) {
    validate(geom);
    if (angles.empty()) throw invalid_parameter_error("need at least one angle");
    const auto r = normalized_positions(geom);
    const int m = geom.size();
    const int k = static_cast<int>(angles.size());
    ComplexMatrix x(m, k);
    for (int col = 0; col < k; ++col) {
        const Eigen::Vector2d dir(std::cos(angles[col]), std::sin(angles[col]));
        for (int row = 0; row < m; ++row) {
            const double phase = 2.0 * kPi * r[static_cast<std::size_t>(row)].dot(dir);
            x(row, col) = cdouble(std::cos(phase), std::sin(phase));
        }
    }
    return x;
}

ComplexMatrix gain_matrix(const TargetScene &scene, double wavelength) {
    validate(scene);
    if (!(wavelength > 0.0)) throw invalid_parameter_error("wavelength must be positive");
    const int k = scene.target_count();
    ComplexMatrix d = ComplexMatrix::Zero(k, k);
    for (int i = 0; i < k; ++i) {
        const double phase = 4.0 * kPi / wavelength * scene.speeds[static_cast<std::size_t>(i)] *
                             static_cast<double>(scene.pulse_index - 1) * scene.pulse_repetition;
        d(i, i) = scene.reflections[static_cast<std::size_t>(i)] *
                  cdouble(std::cos(phase), std::sin(phase));
    }
    return d;
}

ComplexMatrix data_matrix(const ArrayGeometry &tx, const ArrayGeometry &rx,
                          const TargetScene &scene) {
    validate(tx);
    validate(rx);
    if (tx.wavelength != rx.wavelength)
        throw invalid_parameter_error("transmit and receive arrays must share one wavelength");
    const ComplexMatrix xr = steering_matrix(rx, scene.angles);
    const ComplexMatrix xt = steering_matrix(tx, scene.angles);
    const ComplexMatrix d = gain_matrix(scene, tx.wavelength);
    return xr * d * xt.transpose();
}

SampleMask sample_uniform(Eigen::Index rows, Eigen::Index cols, std::size_t m,
                          std::uint64_t seed) {
    if (rows < 1 || cols < 1) throw invalid_parameter_error("mask shape must be positive");
    const std::uint64_t total = static_cast<std::uint64_t>(rows) * static_cast<std::uint64_t>(cols);
    if (m < 1 || m > total)
        throw invalid_parameter_error("sample count must be in [1, rows*cols]");

    // Partial Fisher-Yates over the flat index space, via a sparse overlay so
    // only O(m) slots are materialized.
    CounterRng rng(seed, CounterRng::kMaskStream);
    std::vector<std::uint64_t> picked(m);
    std::unordered_map<std::uint64_t, std::uint64_t> overlay; // slot -> current value
    overlay.reserve(2 * m);
    auto slot_value = [&](std::uint64_t slot) {
        const auto it = overlay.find(slot);
        return it == overlay.end() ? slot : it->second;
    };
    for (std::size_t t = 0; t < m; ++t) {
        const std::uint64_t j = t + rng.next_below(total - t);
        picked[t] = slot_value(j);
        overlay[j] = slot_value(t);
    }

    SampleMask mask;
    mask.rows = rows;
    mask.cols = cols;
    mask.indices.reserve(m);
    for (std::uint64_t flat : picked)
        mask.indices.emplace_back(static_cast<Eigen::Index>(flat / static_cast<std::uint64_t>(cols)),
                                  static_cast<Eigen::Index>(flat % static_cast<std::uint64_t>(cols)));
    std::sort(mask.indices.begin(), mask.indices.end());
    return mask;
}

PartialObservation observe(const ComplexMatrix &delta, const SampleMask &mask,
                           double noise_std, std::uint64_t seed) {
    validate(mask);
    if (mask.rows != delta.rows() || mask.cols != delta.cols())
        throw invalid_parameter_error("mask shape does not match matrix shape");
    if (noise_std < 0.0) throw invalid_parameter_error("noise std must be nonnegative");

    CounterRng rng(seed, CounterRng::kNoiseStream);
    PartialObservation obs;
    obs.mask = mask;
    obs.values.reserve(mask.size());
    double noise_sq = 0.0;
    for (const auto &[i, j] : mask.indices) {
        cdouble z(0.0, 0.0);
        if (noise_std > 0.0) {
            z = rng.next_complex_gaussian(noise_std);
            noise_sq += std::norm(z);
        }
        obs.values.push_back(delta(i, j) + z);
    }
    obs.noise_level = std::sqrt(noise_sq);
    return obs;
}

ComplexMatrix scatter(const PartialObservation &obs) {
    ComplexMatrix out = ComplexMatrix::Zero(obs.mask.rows, obs.mask.cols);
    for (std::size_t t = 0; t < obs.mask.indices.size(); ++t) {
        const auto &[i, j] = obs.mask.indices[t];
        out(i, j) = obs.values[t];
    }
    return out;
}

} // namespace mcradar
