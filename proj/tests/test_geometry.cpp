// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include <doctest.h>

#include "mcradar/errors.hpp"
#include "mcradar/geometry.hpp"
#include "mcradar/rng.hpp"

using namespace mcradar;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_SUITE("geometry") {

TEST_CASE("ula positions") {
    const ArrayGeometry single = make_ula(1, 0.25, 0.5);
    CHECK(single.size() == 1);
    CHECK(single.positions[0] == Eigen::Vector2d(0.0, 0.0));

    const ArrayGeometry four = make_ula(4, 0.25, 0.5);
    for (int l = 0; l < 4; ++l) {
        CHECK(four.positions[l].x() == 0.0);
        CHECK(four.positions[l].y() == doctest::Approx(0.25 * l).epsilon(1e-15));
    }

    // High-DOF transmit spacing M_r * lambda / 2 with M_r = 10.
    const ArrayGeometry wide = make_ula(20, 10 * 0.5 / 2, 0.5);
    CHECK(wide.positions[1].y() - wide.positions[0].y() == doctest::Approx(2.5));
    CHECK(wide.positions[19].y() == doctest::Approx(19 * 2.5));
}

TEST_CASE("ula rejects bad parameters") {
    CHECK_THROWS_AS(make_ula(0, 0.25, 0.5), invalid_parameter_error);
    CHECK_THROWS_AS(make_ula(4, 0.0, 0.5), invalid_parameter_error);
    CHECK_THROWS_AS(make_ula(4, -1.0, 0.5), invalid_parameter_error);
    CHECK_THROWS_AS(make_ula(4, 0.25, 0.0), invalid_parameter_error);
}

TEST_CASE("uca positions") {
    const ArrayGeometry single = make_uca(1, 1.0, 1.0);
    CHECK(single.positions[0].x() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(single.positions[0].y() == doctest::Approx(0.0).epsilon(1e-12));

    // Quarter symmetry: angles {0, pi/2, pi, 3pi/2} as a set.
    const ArrayGeometry four = make_uca(4, 1.0, 0.5);
    int hits = 0;
    for (const auto &p : four.positions) {
        const double angle = std::atan2(p.y(), p.x());
        for (double want : {0.0, kPi / 2, kPi, -kPi / 2})
            if (std::abs(std::remainder(angle - want, 2 * kPi)) < 1e-12) ++hits;
    }
    CHECK(hits == 4);

    // All elements on the circle of radius R, to 1e-12 relative.
    const ArrayGeometry big = make_uca(20, 0.5, 0.5);
    for (const auto &p : big.positions) CHECK(std::abs(p.norm() - 0.5) < 1e-12 * 0.5);

    CHECK_THROWS_AS(make_uca(4, 0.0, 0.5), invalid_parameter_error);
}

TEST_CASE("spiral positions") {
    const ArrayGeometry single = make_spiral(1, 0.1, 0.5);
    CHECK(single.positions[0].norm() == 0.0);

    // Radial distances strictly increase with the element index.
    const ArrayGeometry eight = make_spiral(8, 0.1, 0.5);
    for (int l = 1; l < 8; ++l)
        CHECK(eight.positions[l].norm() > eight.positions[l - 1].norm());

    CHECK_THROWS_AS(make_spiral(8, 0.0, 0.5), invalid_parameter_error);
    CHECK_THROWS_AS(make_spiral(8, 0.1, 0.5, 0.0), invalid_parameter_error);
}

TEST_CASE("normalized positions") {
    const auto ula = normalized_positions(make_ula(2, 0.25, 0.5));
    CHECK(ula[0] == Eigen::Vector2d(0.0, 0.0));
    CHECK(ula[1] == Eigen::Vector2d(0.0, 0.5));

    // Example-1 circular array: R / lambda = 1.
    for (const auto &r : normalized_positions(make_uca(20, 0.5, 0.5)))
        CHECK(r.norm() == doctest::Approx(1.0).epsilon(1e-12));

    const auto custom = normalized_positions(make_custom({Eigen::Vector2d(1.0, 1.0)}, 2.0));
    CHECK(custom[0] == Eigen::Vector2d(0.5, 0.5));

    // ULA y-components are exactly l * (d / lambda).
    const auto exact = normalized_positions(make_ula(16, 0.25, 0.5));
    for (int l = 0; l < 16; ++l) CHECK(exact[l].y() == 0.5 * l);
}

TEST_CASE("wavelength rescale scales normalized positions by 1/c") {
    CounterRng rng(31, CounterRng::kGenericStream);
    for (int trial = 0; trial < 20; ++trial) {
        const double c = 0.25 + 4.0 * rng.next_double();
        const ArrayGeometry base = make_uca(7, 0.8, 0.5);
        ArrayGeometry scaled = base;
        scaled.wavelength = base.wavelength * c;
        const auto a = normalized_positions(base);
        const auto b = normalized_positions(scaled);
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK((b[i] - a[i] / c).norm() < 1e-14 * a[i].norm());
    }
}

TEST_CASE("scene validation") {
    TargetScene scene;
    scene.angles = {0.1, 0.2};
    scene.reflections = {cdouble(1.0, 0.0), cdouble(0.0, 1.0)};
    scene.speeds = {0.0, 5.0};
    CHECK_NOTHROW(validate(scene));

    TargetScene zero = scene;
    zero.reflections[1] = cdouble(0.0, 0.0);
    CHECK_THROWS_AS(validate(zero), invalid_scene_error);

    TargetScene ragged = scene;
    ragged.speeds.pop_back();
    CHECK_THROWS_AS(validate(ragged), invalid_scene_error);

    TargetScene bad_pulse = scene;
    bad_pulse.pulse_index = 0;
    CHECK_THROWS_AS(validate(bad_pulse), invalid_scene_error);

    TargetScene bad_pri = scene;
    bad_pri.pulse_repetition = 0.0;
    CHECK_THROWS_AS(validate(bad_pri), invalid_scene_error);

    TargetScene empty;
    CHECK_THROWS_AS(validate(empty), invalid_scene_error);
}

} // TEST_SUITE
