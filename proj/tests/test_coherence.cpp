// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <sstream>

#include <doctest.h>
#include <Eigen/QR>

#include "mcradar/coherence.hpp"
#include "mcradar/errors.hpp"
#include "mcradar/experiments.hpp"
#include "mcradar/rng.hpp"
#include "mcradar/signal.hpp"

using namespace mcradar;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

TargetScene unit_scene(std::vector<double> angles) {
    TargetScene scene;
    scene.angles = std::move(angles);
    scene.reflections.assign(scene.angles.size(), cdouble(1.0, 0.0));
    scene.speeds.assign(scene.angles.size(), 0.0);
    return scene;
}

ComplexMatrix steering_column(int m, double theta) {
    return steering_matrix(make_ula(m, 0.25, 0.5), std::vector{theta});
}
} // namespace

TEST_SUITE("coherence") {

TEST_CASE("compact svd") {
    const SvdFactors id = compact_svd(ComplexMatrix::Identity(3, 3));
    CHECK(id.rank == 3);
    for (int i = 0; i < 3; ++i) CHECK(id.singular_values(i) == doctest::Approx(1.0));

    // Outer product of unit-modulus vectors of lengths 4 and 5: sigma_1 =
    // ||u|| * ||v|| = sqrt(20).
    ComplexVector u(4), v(5);
    for (int i = 0; i < 4; ++i) u(i) = std::polar(1.0, 0.7 * i);
    for (int i = 0; i < 5; ++i) v(i) = std::polar(1.0, -0.3 * i * i);
    const SvdFactors outer = compact_svd(ComplexMatrix(u * v.adjoint()));
    CHECK(outer.rank == 1);
    CHECK(outer.singular_values(0) == doctest::Approx(std::sqrt(20.0)).epsilon(1e-12));

    // Three well-separated targets: rank 3, cross-checked by positivity of
    // the steering Gram determinant.
    const ArrayGeometry array = make_ula(10, 0.25, 0.5);
    const TargetScene scene = unit_scene({-0.9, 0.1, 1.0});
    const SvdFactors f = compact_svd(data_matrix(array, array, scene));
    CHECK(f.rank == 3);
    const ComplexMatrix xr = steering_matrix(array, scene.angles);
    CHECK((xr.adjoint() * xr).determinant().real() > 1.0);

    CHECK_THROWS_AS(compact_svd(ComplexMatrix::Zero(3, 3)), degenerate_input_error);
    CHECK_THROWS_AS(compact_svd(ComplexMatrix::Identity(3, 3), 0.0), invalid_parameter_error);
}

TEST_CASE("subspace coherence") {
    const int n = 12;
    ComplexMatrix flat = ComplexMatrix::Constant(n, 1, cdouble(1.0 / std::sqrt(n), 0.0));
    CHECK(subspace_coherence(flat) == doctest::Approx(1.0).epsilon(1e-14));

    ComplexMatrix spike = ComplexMatrix::Zero(n, 1);
    spike(0, 0) = 1.0;
    CHECK(subspace_coherence(spike) == doctest::Approx(static_cast<double>(n)));

    // Unit-modulus steering vector normalized by sqrt(M) is perfectly flat.
    for (double theta : {-1.2, 0.0, 0.4, 1.5}) {
        ComplexMatrix b = steering_column(16, theta) / std::sqrt(16.0);
        CHECK(std::abs(subspace_coherence(b) - 1.0) < 1e-12);
    }

    ComplexMatrix skew = ComplexMatrix::Constant(n, 1, cdouble(0.5, 0.0));
    CHECK_THROWS_AS(subspace_coherence(skew), invalid_parameter_error);
}

TEST_CASE("strong coherence") {
    // Full space: projector is the identity, deviation vanishes.
    ComplexMatrix full = ComplexMatrix::Identity(5, 5);
    CHECK(strong_coherence(full) == doctest::Approx(0.0));

    ComplexMatrix spike = ComplexMatrix::Zero(5, 1);
    spike(0, 0) = 1.0;
    CHECK(strong_coherence(spike) == doctest::Approx(4.0));

    ComplexMatrix steering = steering_column(8, 0.9) / std::sqrt(8.0);
    CHECK(strong_coherence(steering) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mu1 parameter") {
    // Rank-1 with unit-modulus factors: every entry of u v^H has the same
    // magnitude, so mu1 = 1.
    const ArrayGeometry array = make_ula(6, 0.25, 0.5);
    const SvdFactors f = compact_svd(data_matrix(array, array, unit_scene({0.4})));
    CHECK(mu1_parameter(f) == doctest::Approx(1.0).epsilon(1e-12));

    // Full-rank unitary factors: brute-force the defining sum.
    CounterRng rng(5, CounterRng::kGenericStream);
    ComplexMatrix g(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) g(i, j) = cdouble(rng.next_gaussian(), rng.next_gaussian());
    const Eigen::HouseholderQR<ComplexMatrix> qr(g);
    const ComplexMatrix q = qr.householderQ();
    SvdFactors unitary;
    unitary.u = q;
    unitary.v = ComplexMatrix::Identity(6, 6);
    unitary.singular_values = Eigen::VectorXd::Ones(6);
    unitary.rank = 6;
    ComplexMatrix sum = ComplexMatrix::Zero(6, 6);
    for (int i = 0; i < 6; ++i) sum += unitary.u.col(i) * unitary.v.col(i).adjoint();
    const double expect = std::sqrt(36.0 / 6.0) * sum.cwiseAbs().maxCoeff();
    CHECK(mu1_parameter(unitary) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("report composition and scale invariance") {
    ComplexMatrix ones = ComplexMatrix::Constant(5, 7, cdouble(1.0, 0.0));
    const CoherenceReport flat = coherence_report(ones);
    CHECK(flat.rank == 1);
    CHECK(flat.mu_u == doctest::Approx(1.0));
    CHECK(flat.mu_v == doctest::Approx(1.0));
    CHECK(flat.mu1 == doctest::Approx(1.0));

    const ArrayGeometry array = make_ula(20, 0.25, 0.5);
    const TargetScene scene = unit_scene({-0.9, -0.2, 0.5, 1.1});
    const ComplexMatrix delta = data_matrix(array, array, scene);
    const CoherenceReport a = coherence_report(delta);
    const CoherenceReport b = coherence_report(ComplexMatrix(cdouble(0.3, -1.7) * delta));
    CHECK(a.rank == b.rank);
    CHECK(a.mu_u == doctest::Approx(b.mu_u).epsilon(1e-12));
    CHECK(a.mu_v == doctest::Approx(b.mu_v).epsilon(1e-12));
    CHECK(a.mu_s_u == doctest::Approx(b.mu_s_u).epsilon(1e-10));
    CHECK(a.mu1 == doctest::Approx(b.mu1).epsilon(1e-10));

    // Definition range.
    CHECK(a.mu_u >= 1.0);
    CHECK(a.mu_u <= 20.0 / a.rank + 1e-12);
}

TEST_CASE("strong coherence and mu1 never exceed the coherence chain") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        CounterRng rng(trial_seed(777, seed), CounterRng::kSceneStream);
        const int k = 2 + static_cast<int>(rng.next_below(4));
        const int m = 8 + static_cast<int>(rng.next_below(17));
        const TargetScene scene = random_scene(k, 0.0, 0.5, rng);
        const ArrayGeometry array = make_ula(m, 0.25, 0.5);
        const CoherenceReport rep = coherence_report(data_matrix(array, array, scene));
        const double mu_max = std::max(rep.mu_u, rep.mu_v);
        CHECK(std::max(rep.mu_s_u, rep.mu_s_v) <= mu_max + 1e-9);
        CHECK(rep.mu1 <= mu_max * std::sqrt(static_cast<double>(rep.rank)) + 1e-9);
    }
}

TEST_CASE("column-space coherence matches the orthonormalized steering factor") {
    // For full-rank gains and distinct angles, the compact left factor spans
    // the same space as the orthonormalized receive steering matrix, so the
    // max row energy route through a QR factorization must agree.
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        CounterRng rng(trial_seed(4242, seed), CounterRng::kSceneStream);
        const int k = 2 + static_cast<int>(rng.next_below(3));
        const int m = 10 + static_cast<int>(rng.next_below(20));
        const TargetScene scene = random_scene(k, 0.03, 0.5, rng);
        const ArrayGeometry array = make_ula(m, 0.25, 0.5);
        const ComplexMatrix delta = data_matrix(array, array, scene);
        const CoherenceReport rep = coherence_report(delta);

        const ComplexMatrix xr = steering_matrix(array, scene.angles);
        Eigen::HouseholderQR<ComplexMatrix> qr(xr);
        const ComplexMatrix thin_q =
            qr.householderQ() * ComplexMatrix::Identity(m, k);
        const double via_qr =
            static_cast<double>(m) / k * thin_q.rowwise().squaredNorm().maxCoeff();
        CHECK(rep.mu_u == doctest::Approx(via_qr).epsilon(1e-8));
    }
}

TEST_CASE("angle deduplication") {
    TargetScene distinct = unit_scene({0.1, 0.5, -0.4});
    const TargetScene same = dedup_angles(distinct, 0.0);
    CHECK(same.angles == distinct.angles);

    TargetScene dup = unit_scene({0.3, 0.3, 0.7});
    dup.reflections = {cdouble(1, 0), cdouble(2, 0), cdouble(3, 0)};
    dup.speeds = {1.0, 2.0, 3.0};
    const TargetScene reduced = dedup_angles(dup, 0.0);
    CHECK(reduced.angles == std::vector<double>{0.3, 0.7});
    CHECK(reduced.reflections == std::vector<cdouble>{cdouble(1, 0), cdouble(3, 0)});
    CHECK(reduced.speeds == std::vector<double>{1.0, 3.0});

    // eps collapses near-duplicates to the first occurrence.
    const TargetScene eps = dedup_angles(unit_scene({0.30, 0.300001, 0.7}), 1e-3);
    CHECK(eps.target_count() == 2);

    // Exactly duplicated angles leave the measured coherence unchanged.
    const ArrayGeometry array = make_uca(12, 0.5, 0.5);
    TargetScene twin = unit_scene({-0.8, 0.2, 0.9});
    twin.angles.push_back(0.2);
    twin.reflections.push_back(cdouble(0.5, -1.0));
    twin.speeds.push_back(4.0);
    const CoherenceReport full = coherence_report(data_matrix(array, array, twin));
    const CoherenceReport dedup =
        coherence_report(data_matrix(array, array, dedup_angles(twin, 0.0)));
    CHECK(full.rank == 3);
    CHECK(full.mu_u == doctest::Approx(dedup.mu_u).epsilon(1e-8));
    CHECK(full.mu_v == doctest::Approx(dedup.mu_v).epsilon(1e-8));
}

TEST_CASE("report serialization") {
    const ArrayGeometry array = make_ula(8, 0.25, 0.5);
    const CoherenceReport rep =
        coherence_report(data_matrix(array, array, unit_scene({0.2, -0.6})));
    std::ostringstream os;
    write_report(os, rep);
    const std::string text = os.str();
    for (const char *key : {"rank ", "mu_u ", "mu_v ", "mu_s_u ", "mu_s_v ", "mu1 ", "tol "})
        CHECK(text.find(key) != std::string::npos);
}

} // TEST_SUITE
