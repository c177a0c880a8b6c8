// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <set>

#include <doctest.h>

#include "mcradar/coherence.hpp"
#include "mcradar/errors.hpp"
#include "mcradar/rng.hpp"
#include "mcradar/signal.hpp"

using namespace mcradar;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

TargetScene simple_scene(std::vector<double> angles) {
    TargetScene scene;
    scene.angles = std::move(angles);
    scene.reflections.assign(scene.angles.size(), cdouble(1.0, 0.0));
    scene.speeds.assign(scene.angles.size(), 0.0);
    return scene;
}
} // namespace

TEST_SUITE("signal") {

TEST_CASE("steering columns") {
    // Broadside: sin(0) = 0, every phase vanishes.
    const ComplexMatrix broadside = steering_matrix(make_ula(3, 0.25, 0.5), std::vector{0.0});
    for (int l = 0; l < 3; ++l) CHECK(std::abs(broadside(l, 0) - 1.0) < 1e-15);

    // Endfire at half-wavelength spacing alternates sign: exp(j*pi*l).
    const ComplexMatrix endfire =
        steering_matrix(make_ula(4, 0.25, 0.5), std::vector{kPi / 2});
    for (int l = 0; l < 4; ++l)
        CHECK(std::abs(endfire(l, 0) - cdouble(l % 2 == 0 ? 1.0 : -1.0, 0.0)) < 1e-12);

    // Circular array at theta = 0: entry l is exp(j*2*pi*cos(2*pi*(l-1)/20)).
    const ComplexMatrix circular =
        steering_matrix(make_uca(20, 0.5, 0.5), std::vector{0.0});
    for (int l = 0; l < 20; ++l) {
        const double phase = 2.0 * kPi * std::cos(2.0 * kPi * (l - 1) / 20.0);
        CHECK(std::abs(circular(l, 0) - cdouble(std::cos(phase), std::sin(phase))) < 1e-12);
    }
}

TEST_CASE("linear-array steering is a power rule in the row index") {
    CounterRng rng(11, CounterRng::kGenericStream);
    std::vector<double> angles;
    for (int k = 0; k < 4; ++k) angles.push_back((rng.next_double() - 0.5) * kPi);
    const ComplexMatrix x = steering_matrix(make_ula(8, 0.25, 0.5), angles);
    for (int l = 0; l < 8; ++l)
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(x(l, k) - std::pow(x(1, k), l)) < 1e-10);
}

TEST_CASE("gain matrix") {
    TargetScene scene = simple_scene({0.1, -0.4});
    scene.reflections = {cdouble(2.0, 1.0), cdouble(0.0, -3.0)};
    scene.speeds = {10.0, -7.0};

    // q = 1: no accumulated phase, diagonal is exactly zeta.
    scene.pulse_index = 1;
    const ComplexMatrix d1 = gain_matrix(scene, 0.5);
    CHECK(d1(0, 0) == scene.reflections[0]);
    CHECK(d1(1, 1) == scene.reflections[1]);
    CHECK(d1(0, 1) == cdouble(0.0, 0.0));

    // One interval of Doppler phase: 4*pi*10*1e-3/0.5 = 0.251327...
    TargetScene moving = simple_scene({0.2});
    moving.speeds = {10.0};
    moving.pulse_index = 2;
    moving.pulse_repetition = 1e-3;
    const ComplexMatrix d2 = gain_matrix(moving, 0.5);
    const double phase = 4.0 * kPi * 10.0 * 1e-3 / 0.5;
    CHECK(phase == doctest::Approx(0.2513274122871834).epsilon(1e-12));
    CHECK(std::abs(d2(0, 0) - cdouble(std::cos(phase), std::sin(phase))) < 1e-15);

    // Unit-modulus phase factor preserves magnitudes.
    scene.pulse_index = 7;
    const ComplexMatrix d3 = gain_matrix(scene, 0.5);
    for (int k = 0; k < 2; ++k)
        CHECK(std::abs(d3(k, k)) == doctest::Approx(std::abs(scene.reflections[k])));

    TargetScene invalid = scene;
    invalid.reflections[0] = cdouble(0.0, 0.0);
    CHECK_THROWS_AS(gain_matrix(invalid, 0.5), invalid_scene_error);
}

TEST_CASE("data matrix structure") {
    const ArrayGeometry rx = make_ula(6, 0.25, 0.5);
    const ArrayGeometry tx = make_ula(4, 0.25, 0.5);

    // Single target with unit gain: unit-modulus rank-1 sheet.
    const TargetScene one = simple_scene({0.37});
    const ComplexMatrix rank1 = data_matrix(tx, rx, one);
    CHECK(rank1.rows() == 6);
    CHECK(rank1.cols() == 4);
    const auto rr = normalized_positions(rx);
    const auto rt = normalized_positions(tx);
    const Eigen::Vector2d dir(std::cos(0.37), std::sin(0.37));
    for (int l = 0; l < 6; ++l)
        for (int m = 0; m < 4; ++m) {
            const double phase = 2.0 * kPi * (rr[l] + rt[m]).dot(dir);
            CHECK(std::abs(rank1(l, m) - cdouble(std::cos(phase), std::sin(phase))) < 1e-12);
        }
    CHECK(compact_svd(rank1).rank == 1);

    CHECK(compact_svd(data_matrix(tx, rx, simple_scene({-0.4, 0.9}))).rank == 2);
    CHECK(compact_svd(data_matrix(tx, rx, simple_scene({0.3, 0.3}))).rank == 1);

    const ArrayGeometry other_wavelength = make_ula(4, 0.25, 0.6);
    CHECK_THROWS_AS(data_matrix(other_wavelength, rx, one), invalid_parameter_error);
}

TEST_CASE("common reflection scaling scales the data matrix") {
    CounterRng rng(17, CounterRng::kGenericStream);
    const ArrayGeometry array = make_ula(5, 0.25, 0.5);
    TargetScene scene = simple_scene({-0.7, 0.1, 0.8});
    scene.reflections = {cdouble(1.0, 2.0), cdouble(-0.5, 0.25), cdouble(0.0, 1.0)};
    const ComplexMatrix base = data_matrix(array, array, scene);
    for (int trial = 0; trial < 5; ++trial) {
        const cdouble c(rng.next_gaussian(), rng.next_gaussian());
        if (std::abs(c) < 0.1) continue;
        TargetScene scaled = scene;
        for (auto &z : scaled.reflections) z *= c;
        const ComplexMatrix got = data_matrix(array, array, scaled);
        CHECK((got - c * base).cwiseAbs().maxCoeff() < 1e-12 * std::abs(c) * base.norm());
    }
}

TEST_CASE("uniform sampling") {
    const SampleMask full = sample_uniform(4, 5, 20, 99);
    CHECK(full.size() == 20);
    std::set<std::pair<Eigen::Index, Eigen::Index>> unique(full.indices.begin(),
                                                           full.indices.end());
    CHECK(unique.size() == 20);

    const SampleMask one = sample_uniform(4, 5, 1, 7);
    CHECK(one.size() == 1);
    CHECK(one.indices[0].first >= 0);
    CHECK(one.indices[0].first < 4);
    CHECK(one.indices[0].second < 5);

    // Determinism in the seed.
    const SampleMask a = sample_uniform(8, 8, 32, 1234);
    const SampleMask b = sample_uniform(8, 8, 32, 1234);
    CHECK(a.indices == b.indices);
    const SampleMask c = sample_uniform(8, 8, 32, 1235);
    CHECK(a.indices != c.indices);

    CHECK_THROWS_AS(sample_uniform(4, 5, 0, 1), invalid_parameter_error);
    CHECK_THROWS_AS(sample_uniform(4, 5, 21, 1), invalid_parameter_error);
}

TEST_CASE("sampling frequencies are roughly uniform") {
    // Every coordinate of a 6x6 grid should be hit about m/36 of the time.
    std::vector<int> counts(36, 0);
    const int runs = 4000;
    for (int r = 0; r < runs; ++r)
        for (const auto &[i, j] : sample_uniform(6, 6, 9, 5000 + r).indices)
            ++counts[static_cast<std::size_t>(i * 6 + j)];
    const double expect = runs * 9.0 / 36.0; // 1000
    for (int c : counts) CHECK(std::abs(c - expect) < 5.0 * std::sqrt(expect * 0.75));
}

TEST_CASE("observation") {
    const ArrayGeometry array = make_ula(6, 0.25, 0.5);
    const ComplexMatrix delta = data_matrix(array, array, simple_scene({0.3, -0.5}));

    const SampleMask mask = sample_uniform(6, 6, 20, 3);
    const PartialObservation clean = observe(delta, mask, 0.0, 3);
    CHECK(clean.noise_level == 0.0);
    for (std::size_t t = 0; t < mask.indices.size(); ++t) {
        const auto &[i, j] = mask.indices[t];
        CHECK(clean.values[t] == delta(i, j));
    }

    const SampleMask full = sample_uniform(6, 6, 36, 3);
    const ComplexMatrix back = scatter(observe(delta, full, 0.0, 3));
    CHECK((back - delta).cwiseAbs().maxCoeff() == 0.0);

    const PartialObservation noisy = observe(delta, mask, 0.1, 3);
    CHECK(noisy.noise_level > 0.0);
    // Same seed reproduces both values and recorded delta.
    const PartialObservation again = observe(delta, mask, 0.1, 3);
    CHECK(noisy.noise_level == again.noise_level);
    CHECK(noisy.values == again.values);

    SampleMask wrong = mask;
    wrong.rows = 5;
    CHECK_THROWS_AS(observe(delta, wrong, 0.0, 3), invalid_parameter_error);
}

TEST_CASE("noise power concentrates around m sigma^2") {
    const ComplexMatrix zero = ComplexMatrix::Zero(10, 10);
    const SampleMask mask = sample_uniform(10, 10, 60, 8);
    const double sigma = 0.1;
    double mean_sq = 0.0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        const PartialObservation obs = observe(zero, mask, sigma, 1000 + s);
        mean_sq += obs.noise_level * obs.noise_level;
    }
    mean_sq /= seeds;
    const double expect = 60 * sigma * sigma;
    // Var of |z|^2 per entry is sigma^4; five standard errors of the mean.
    const double tolerance = 5.0 * sigma * sigma * std::sqrt(60.0 / seeds);
    CHECK(std::abs(mean_sq - expect) < tolerance);
}

TEST_CASE("mask draws are independent of noise draws") {
    // Same seed drives both; the mask stream must not shift when the noise
    // stream is consumed differently.
    const ComplexMatrix zero = ComplexMatrix::Zero(8, 8);
    const SampleMask before = sample_uniform(8, 8, 16, 42);
    (void)observe(zero, before, 0.5, 42);
    (void)observe(zero, before, 0.0, 42);
    const SampleMask after = sample_uniform(8, 8, 16, 42);
    CHECK(before.indices == after.indices);
}

} // TEST_SUITE
