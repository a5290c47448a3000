#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace dualcurv;

namespace {

QuadratureSpec spec_with(std::int64_t samples, std::uint64_t seed) {
    QuadratureSpec spec;
    spec.samples = samples;
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST_CASE("make_subspace") {
    auto L1 = make_subspace({unit_axis(3, 0)});
    CHECK(L1.dim() == 1);
    CHECK(L1.ambient() == 3);

    auto L2 = make_subspace({Vec{1, 1, 0}, Vec{1, -1, 0}});
    CHECK(L2.dim() == 2);
    CHECK(projector_distance(L2.basis(), span_of_axes(3, {0, 1}).basis()) < 1e-12);

    CHECK_THROWS_AS(make_subspace({Vec{1, 0, 0}, Vec{2, 0, 0}}), RankDeficientError);
    CHECK_THROWS_AS(make_subspace({Vec{1, 0}, Vec{0, 1}}), ValidationError);  // not proper
}

TEST_CASE("verdict classification") {
    using dualcurv::detail::classify_verdict;
    CHECK(classify_verdict(0.20, 0.01, 0.5) == Verdict::strict_pass);
    CHECK(classify_verdict(0.49, 0.01, 0.5) == Verdict::equality_candidate);
    CHECK(classify_verdict(0.52, 0.01, 0.5) == Verdict::equality_candidate);
    CHECK(classify_verdict(0.54, 0.01, 0.5) == Verdict::violation);
    // zero-variance exact results
    CHECK(classify_verdict(0.0, 0.0, 1.0) == Verdict::strict_pass);
    CHECK(classify_verdict(1.0, 0.0, 1.0) == Verdict::equality_candidate);
}

TEST_CASE("cube ratios: equality at q = n, strict below") {
    auto cube = testkit::unit_cube(3);
    auto L = span_of_axes(3, {0});

    auto at_n = concentration_ratio(cube, 3.0, L, spec_with(400'000, 31));
    CHECK(at_n.bound == doctest::Approx(1.0 / 3.0));
    CHECK(std::abs(at_n.ratio - 1.0 / 3.0) <= 2.0 * at_n.std_err);
    CHECK(at_n.verdict == Verdict::equality_candidate);

    auto plane = concentration_ratio(cube, 3.0, span_of_axes(3, {0, 1}), spec_with(400'000, 30));
    CHECK(std::abs(plane.ratio - 2.0 / 3.0) <= 2.0 * plane.std_err);

    // For every q the cube splits its measure equally over six facet cones,
    // so the ratio stays 1/3 while the bound grows to 1/2: strictness.
    auto at_2 = concentration_ratio(cube, 2.0, L, spec_with(400'000, 32));
    CHECK(at_2.bound == doctest::Approx(0.5));
    CHECK(std::abs(at_2.ratio - 1.0 / 3.0) <= 4.0 * at_2.std_err);
    CHECK(at_2.verdict == Verdict::strict_pass);
    CHECK(at_2.margin > 5.0 * at_2.std_err);

    auto at_15 = concentration_ratio(cube, 1.5, L, spec_with(400'000, 33));
    CHECK(at_15.bound == doctest::Approx(2.0 / 3.0));
    CHECK(at_15.verdict == Verdict::strict_pass);
}

TEST_CASE("smooth strictly convex bodies put no mass on subspace spheres") {
    auto ball = SymmetricBody::ball(1.0, 3);
    auto ell = testkit::random_ellipsoid(34, 3);
    for (int k : {1, 2}) {
        auto L = testkit::random_subspace(35 + k, 3, k);
        for (const auto& body : {ball, ell}) {
            auto report = concentration_ratio(body, 2.0, L, spec_with(100'000, 36));
            CHECK(report.ratio == 0.0);
            CHECK(report.std_err == 0.0);
            CHECK(report.verdict == Verdict::strict_pass);
        }
    }
}

TEST_CASE("ratio standard error is small for shared-stream estimates") {
    auto cube = testkit::unit_cube(3);
    auto L = span_of_axes(3, {0, 1});
    auto report = concentration_ratio(cube, 3.0, L, spec_with(1'000'000, 37));
    CHECK(report.std_err < 2e-3);
    CHECK(std::abs(report.ratio - 2.0 / 3.0) <= 3.0 * report.std_err);
}

TEST_CASE("degenerate denominator is detected") {
    // Weights rho^q underflow to zero for a tiny body at an absurd exponent.
    auto small_cube = testkit::unit_cube(3).scaled(0.5);
    auto L = span_of_axes(3, {0});
    CHECK_THROWS_AS(concentration_ratio(small_cube, 5000.0, L, spec_with(10'000, 38)),
                    DegenerateDenominatorError);
}

TEST_CASE("bound sweep over a small grid") {
    std::vector<SymmetricBody> bodies;
    bodies.push_back(testkit::unit_cube(3));
    bodies.push_back(testkit::random_symmetric_polytope(39, 3, 8));
    std::vector<double> qs = {1.5, 3.0};
    std::vector<Subspace> subspaces;
    subspaces.push_back(span_of_axes(3, {0, 1}));
    subspaces.push_back(testkit::random_subspace(40, 3, 1));

    auto reports = check_theorem_bound(bodies, qs, subspaces, spec_with(200'000, 41));
    REQUIRE(reports.size() == 8);
    for (const auto& report : reports) {
        CHECK(report.verdict != Verdict::violation);
        CHECK(report.ratio >= -1e-12);
        CHECK(report.ratio <= 1.0 + 3.0 * report.std_err + 1e-12);
    }
    // cube, q = 3, L = span{e1,e2} sits at the bound and is SCC-confirmed.
    const auto& cube_eq = reports[2];  // body 0, q=3.0, L index 0
    CHECK(cube_eq.q == 3.0);
    CHECK(cube_eq.dim_L == 2);
    CHECK(cube_eq.verdict == Verdict::equality_candidate);
    CHECK(cube_eq.scc_confirmed);
}

TEST_CASE("the sweep is deterministic across reruns") {
    std::vector<SymmetricBody> bodies;
    bodies.push_back(testkit::random_symmetric_polytope(44, 3, 7));
    std::vector<double> qs = {2.0, 3.0};
    std::vector<Subspace> subspaces;
    subspaces.push_back(testkit::facet_normal_subspace(testkit::as_polytope(bodies[0]), 45, 1));
    auto a = check_theorem_bound(bodies, qs, subspaces, spec_with(100'000, 46));
    auto b = check_theorem_bound(bodies, qs, subspaces, spec_with(100'000, 46));
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].ratio == b[i].ratio);
        CHECK(a[i].std_err == b[i].std_err);
    }
}

TEST_CASE("grid points with distinct seeds decorrelate") {
    std::vector<SymmetricBody> bodies;
    bodies.push_back(testkit::unit_cube(3));
    std::vector<double> qs = {3.0};
    std::vector<Subspace> subspaces;
    subspaces.push_back(span_of_axes(3, {0}));
    subspaces.push_back(span_of_axes(3, {1}));

    auto reports = check_theorem_bound(bodies, qs, subspaces, spec_with(100'000, 42));
    REQUIRE(reports.size() == 2);
    // Same ratio distribution by symmetry, but different sample streams.
    CHECK(reports[0].ratio != reports[1].ratio);
    CHECK(std::abs(reports[0].ratio - reports[1].ratio) <
          5.0 * std::hypot(reports[0].std_err, reports[1].std_err));
}

TEST_CASE("SCC holds for the cube with full equality structure") {
    auto report = check_scc_polytope(testkit::as_polytope(testkit::unit_cube(3)));
    CHECK(report.holds);
    CHECK(report.total == doctest::Approx(8.0).epsilon(1e-12));
    int equalities = 0;
    for (const auto& cand : report.candidates) {
        CHECK_FALSE(cand.violation);
        if (cand.equality) {
            ++equalities;
            CHECK(cand.complement_ok);
            CHECK(cand.ratio == doctest::Approx(cand.dim / 3.0).epsilon(1e-12));
        }
    }
    CHECK(equalities == 6);  // three axes and three coordinate planes
}

TEST_CASE("SCC holds strictly for the 3-dimensional cross-polytope") {
    double s = std::sqrt(1.0 / 3.0);
    auto cross = SymmetricBody::polytope_h(
        {Vec{s, s, s}, Vec{s, s, -s}, Vec{s, -s, s}, Vec{s, -s, -s}}, {s, s, s, s});
    auto report = check_scc_polytope(testkit::as_polytope(cross));
    CHECK(report.holds);
    CHECK(report.total == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
    for (const auto& cand : report.candidates) {
        CHECK_FALSE(cand.violation);
        CHECK_FALSE(cand.equality);
        CHECK(cand.ratio < cand.bound - 1e-6);
    }
}

TEST_CASE("SCC holds for boxes of every aspect ratio, with coordinate equalities") {
    for (double t : {0.25, 1.0, 4.0}) {
        auto box = SymmetricBody::polytope_h(
            {unit_axis(3, 0), unit_axis(3, 1), unit_axis(3, 2)}, {1.0, 1.0, t});
        auto report = check_scc_polytope(testkit::as_polytope(box));
        CHECK(report.holds);
        CHECK(report.total == doctest::Approx(8.0 * t).epsilon(1e-9));
        bool found_plane = false;
        for (const auto& cand : report.candidates) {
            CHECK(cand.equality);  // every coordinate span of a box is tight
            CHECK(cand.complement_ok);
            if (cand.dim == 2 &&
                projector_distance(cand.basis, span_of_axes(3, {0, 1}).basis()) < 1e-8) {
                found_plane = true;
                CHECK(cand.ratio == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
            }
        }
        CHECK(found_plane);
    }
}

TEST_CASE("SCC dimension cap") {
    std::vector<Vec> normals;
    std::vector<double> offsets;
    for (int i = 0; i < 5; ++i) {
        normals.push_back(unit_axis(5, i));
        offsets.push_back(1.0);
    }
    auto cube5 = SymmetricBody::polytope_h(normals, offsets);
    CHECK_THROWS_AS(check_scc_polytope(testkit::as_polytope(cube5)), DimensionTooLargeError);
}

TEST_CASE("equality candidates at q = n coincide with SCC equality subspaces") {
    // A box battery: every coordinate subspace is an equality case.
    std::vector<SymmetricBody> bodies;
    bodies.push_back(testkit::unit_cube(3));
    bodies.push_back(SymmetricBody::polytope_h(
        {unit_axis(3, 0), unit_axis(3, 1), unit_axis(3, 2)}, {1.0, 1.0, 0.5}));
    std::vector<double> qs = {3.0};
    std::vector<Subspace> subspaces;
    subspaces.push_back(span_of_axes(3, {2}));
    subspaces.push_back(span_of_axes(3, {0, 2}));

    auto reports = check_theorem_bound(bodies, qs, subspaces, spec_with(400'000, 43));
    for (const auto& report : reports) {
        CHECK(report.verdict == Verdict::equality_candidate);
        CHECK(report.scc_confirmed);
    }
}
