#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace dualcurv;

namespace {

SymmetricBody ellipse_axes_1_2() {
    // semi-axes 1 and 2: {x : x1^2 + x2^2/4 <= 1}
    Mat quad(2, 2);
    quad.at(0, 0) = 1.0;
    quad.at(1, 1) = 0.25;
    return SymmetricBody::ellipsoid(quad);
}

}  // namespace

TEST_CASE("support function on known bodies") {
    CHECK(SymmetricBody::ball(1.0, 2).support(Vec{3, 4}) == doctest::Approx(5.0));
    CHECK(testkit::unit_cube(2).support(Vec{1, 1}) == doctest::Approx(2.0));

    // Independent oracle for the ellipsoid: maximize <x, y> over a dense
    // boundary sample y = (cos a, 2 sin a).
    auto ell = ellipse_axes_1_2();
    Vec x{0, 1};
    double brute = -1e300;
    for (int i = 0; i < 200000; ++i) {
        double a = 6.283185307179586 * i / 200000.0;
        brute = std::max(brute, x[0] * std::cos(a) + x[1] * 2.0 * std::sin(a));
    }
    CHECK(ell.support(x) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(ell.support(x) == doctest::Approx(brute).epsilon(1e-8));
}

TEST_CASE("radial function on known bodies") {
    auto ball = SymmetricBody::ball(1.0, 3);
    CHECK(ball.radial(normalized(Vec{1, 2, 2})) == doctest::Approx(1.0));

    auto cube = testkit::unit_cube(2);
    double c = std::sqrt(0.5);
    CHECK(cube.radial(Vec{c, c}) == doctest::Approx(std::sqrt(2.0)));

    auto cyl = SymmetricBody::cylinder(0.5, 1, 3);
    CHECK(cyl.radial(Vec{1, 0, 0}) == doctest::Approx(0.5));
    CHECK(cyl.radial(Vec{0, 1, 0}) == doctest::Approx(1.0));
}

TEST_CASE("attaining normals: facets, vertices, smooth points") {
    auto ball = SymmetricBody::ball(1.0, 2);
    auto ns = ball.attaining_normals(Vec{0, 1});
    REQUIRE(ns.size() == 1);
    CHECK(distance(ns[0], Vec{0, 1}) < 1e-12);

    auto cube = testkit::unit_cube(2);
    ns = cube.attaining_normals(Vec{1, 0});
    REQUIRE(ns.size() == 1);
    CHECK(distance(ns[0], Vec{1, 0}) < 1e-12);

    double c = std::sqrt(0.5);
    ns = cube.attaining_normals(Vec{c, c}, 1e-9);
    CHECK(ns.size() == 2);

    auto ell = ellipse_axes_1_2();
    ns = ell.attaining_normals(normalized(Vec{1, 1}));
    REQUIRE(ns.size() == 1);
    // normal at rho*u is parallel to Q u
    Vec u = normalized(Vec{1, 1});
    Vec expect = normalized(Vec{u[0], 0.25 * u[1]});
    CHECK(distance(ns[0], expect) < 1e-12);
}

TEST_CASE("membership") {
    auto cube = testkit::unit_cube(2);
    CHECK(cube.contains(Vec{0.5, -0.5}));
    CHECK_FALSE(cube.contains(Vec{1.1, 0.0}));

    auto squarev = make_polytope_v({Vec{0, -1}, Vec{2, -1}, Vec{2, 1}, Vec{0, 1}});
    CHECK(contains(squarev, Vec{0, 0}));  // boundary point
    CHECK(contains(squarev, Vec{1, 0.5}));
    CHECK_FALSE(contains(squarev, Vec{-0.1, 0}));
}

TEST_CASE("construction validation") {
    CHECK_THROWS_AS(SymmetricBody::ball(0.0, 2), ValidationError);
    CHECK_THROWS_AS(SymmetricBody::polytope_h({Vec{1, 0}}, {0.0}), ValidationError);
    // normals that do not span R^2: unbounded slab
    CHECK_THROWS_AS(SymmetricBody::polytope_h({Vec{1, 0}, Vec{2, 0}}, {1.0, 3.0}), ValidationError);
    CHECK_THROWS_AS(SymmetricBody::cylinder(1.0, 3, 3), ValidationError);
    CHECK_THROWS_AS(make_polytope_v({Vec{0, 0}, Vec{1, 0}, Vec{2, 0}}), ValidationError);
}

TEST_CASE("duplicate halfspaces merge to the tighter offset") {
    auto body = SymmetricBody::polytope_h({Vec{1, 0}, Vec{-1, 0}, Vec{0, 1}, Vec{1, 0}},
                                          {1.0, 2.0, 1.0, 1.5});
    const auto& poly = testkit::as_polytope(body);
    CHECK(poly.pair_count() == 2);
    CHECK(body.radial(Vec{1, 0}) == doctest::Approx(1.0));
    CHECK(body.radial(Vec{-1, 0}) == doctest::Approx(1.0));
}

TEST_CASE("homogeneity: dilation scales the radial function on all variants") {
    std::vector<SymmetricBody> bodies;
    bodies.push_back(SymmetricBody::ball(0.8, 3));
    bodies.push_back(testkit::random_ellipsoid(5, 3));
    bodies.push_back(testkit::random_symmetric_polytope(6, 3, 8));
    bodies.push_back(SymmetricBody::cylinder(0.7, 1, 3));
    SampleStream stream(17, 0);
    for (const auto& body : bodies) {
        for (double c : {0.25, 1.7, 3.0}) {
            auto scaled = body.scaled(c);
            for (int j = 0; j < 50; ++j) {
                Vec u = sphere_direction_from(stream, 3);
                CHECK(scaled.radial(u) == doctest::Approx(c * body.radial(u)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("boundary consistency: points just inside and outside") {
    std::vector<SymmetricBody> bodies;
    bodies.push_back(SymmetricBody::ball(1.3, 3));
    bodies.push_back(testkit::random_ellipsoid(7, 3));
    bodies.push_back(testkit::random_symmetric_polytope(8, 3, 10));
    bodies.push_back(SymmetricBody::cylinder(0.5, 2, 3));
    SampleStream stream(18, 0);
    const double eps = 1e-6;
    for (const auto& body : bodies) {
        for (int j = 0; j < 200; ++j) {
            Vec u = sphere_direction_from(stream, 3);
            double rho = body.radial(u);
            CHECK(body.contains(u * (rho * (1.0 - eps))));
            CHECK_FALSE(body.contains(u * (rho * (1.0 + eps))));
        }
    }
}

TEST_CASE("support/normal consistency at the boundary point") {
    std::vector<SymmetricBody> bodies;
    bodies.push_back(SymmetricBody::ball(2.0, 3));
    bodies.push_back(testkit::random_ellipsoid(9, 3));
    bodies.push_back(testkit::random_symmetric_polytope(10, 3, 7));
    bodies.push_back(SymmetricBody::cylinder(1.2, 1, 3));
    SampleStream stream(19, 0);
    for (const auto& body : bodies) {
        for (int j = 0; j < 40; ++j) {
            Vec u = sphere_direction_from(stream, 3);
            Vec x = u * body.radial(u);
            for (const Vec& v : body.attaining_normals(u)) {
                double h = body.support(v);
                CHECK(dot(x, v) == doctest::Approx(h).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("symmetry of radial and support functions") {
    auto body = testkit::random_symmetric_polytope(11, 4, 12);
    auto cyl = SymmetricBody::cylinder(0.9, 2, 4);
    SampleStream stream(20, 0);
    for (int j = 0; j < 10000; ++j) {
        Vec u = sphere_direction_from(stream, 4);
        CHECK(body.radial(u) == doctest::Approx(body.radial(-u)).epsilon(1e-12));
        CHECK(cyl.radial(u) == doctest::Approx(cyl.radial(-u)).epsilon(1e-12));
    }
    for (int j = 0; j < 50; ++j) {
        Vec x = sphere_direction_from(stream, 4) * 2.5;
        CHECK(body.support(x) == doctest::Approx(body.support(-x)).epsilon(1e-9));
    }
}

TEST_CASE("cylinder agrees with slab-and-ball cross checks") {
    // n = 2: the cylinder (r B_1) x B_1 is exactly the box [-r,r] x [-1,1].
    auto cyl2 = SymmetricBody::cylinder(0.4, 1, 2);
    auto box2 = SymmetricBody::polytope_h({Vec{1, 0}, Vec{0, 1}}, {0.4, 1.0});
    SampleStream stream(21, 0);
    for (int j = 0; j < 2000; ++j) {
        Vec u = sphere_direction_from(stream, 2);
        CHECK(cyl2.radial(u) == doctest::Approx(box2.radial(u)).epsilon(1e-12));
    }
    // n = 3, k = 1: membership factorizes into a slab and a disk.
    auto cyl3 = SymmetricBody::cylinder(0.5, 1, 3);
    for (int j = 0; j < 2000; ++j) {
        Vec x = sphere_direction_from(stream, 3) * (1.3 * SampleStream(22, j).u01());
        bool manual = std::abs(x[0]) <= 0.5 && std::hypot(x[1], x[2]) <= 1.0;
        CHECK(cyl3.contains(x) == manual);
        double rho_manual = std::min(0.5 / std::abs(x[0] / norm(x)),
                                     1.0 / (std::hypot(x[1], x[2]) / norm(x)));
        CHECK(cyl3.radial(normalized(x)) == doctest::Approx(rho_manual).epsilon(1e-12));
    }
}

TEST_CASE("vertex enumeration: cube and cross-polytope") {
    auto cube = testkit::unit_cube(3);
    auto verts = dualcurv::detail::polytope_vertices(testkit::as_polytope(cube));
    CHECK(verts.size() == 8);

    double s = std::sqrt(1.0 / 3.0);
    auto cross = SymmetricBody::polytope_h(
        {Vec{s, s, s}, Vec{s, s, -s}, Vec{s, -s, s}, Vec{s, -s, -s}},
        {s, s, s, s});
    verts = dualcurv::detail::polytope_vertices(testkit::as_polytope(cross));
    CHECK(verts.size() == 6);  // +-e_i
}

TEST_CASE("minkowski_lambda: symmetrization and symmetric identity") {
    auto squarev = make_polytope_v({Vec{0, -1}, Vec{2, -1}, Vec{2, 1}, Vec{0, 1}});
    auto sym = minkowski_lambda(squarev, 0.5);
    // As a set this equals [-1,1]^2.
    ConvexHullTester tester(sym.vertices);
    SampleStream stream(23, 0);
    for (int j = 0; j < 5000; ++j) {
        Vec x{3.0 * stream.u01() - 1.5, 3.0 * stream.u01() - 1.5};
        bool in_unit_square = std::abs(x[0]) <= 1.0 - 1e-9 && std::abs(x[1]) <= 1.0 - 1e-9;
        bool out_unit_square = std::abs(x[0]) >= 1.0 + 1e-9 || std::abs(x[1]) >= 1.0 + 1e-9;
        if (in_unit_square) CHECK(tester.contains(x));
        if (out_unit_square) CHECK_FALSE(tester.contains(x));
    }

    // For symmetric K the combination is K itself, for any lambda.
    auto sym_square = testkit::square_v(1.0);
    auto mixed = minkowski_lambda(sym_square, 0.3);
    ConvexHullTester a(mixed.vertices), b(sym_square.vertices);
    for (int j = 0; j < 5000; ++j) {
        Vec x{3.0 * stream.u01() - 1.5, 3.0 * stream.u01() - 1.5};
        CHECK(a.contains(x) == b.contains(x));
    }
    CHECK_THROWS_AS(minkowski_lambda(sym_square, 0.0), ValidationError);
}

TEST_CASE("minkowski_lambda of a triangle: hexagon of known area") {
    auto tri = make_polytope_v({Vec{0, 0}, Vec{1, 0}, Vec{0, 1}});
    auto hex = minkowski_lambda(tri, 0.5);
    // Brute-force membership count over a fine grid; the symmetrized body
    // has area 3/4.
    ConvexHullTester tester(hex.vertices);
    const int grid = 400;
    int inside = 0;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            Vec x{-1.0 + 2.0 * (i + 0.5) / grid, -1.0 + 2.0 * (j + 0.5) / grid};
            if (tester.contains(x)) ++inside;
        }
    }
    double area = 4.0 * inside / (grid * grid);
    CHECK(area == doctest::Approx(0.75).epsilon(0.01));
}

TEST_CASE("circumradius bounds contain sampled boundary points") {
    std::vector<SymmetricBody> bodies;
    bodies.push_back(SymmetricBody::ball(1.5, 3));
    bodies.push_back(testkit::random_ellipsoid(30, 3));
    bodies.push_back(testkit::random_symmetric_polytope(31, 3, 9));
    bodies.push_back(SymmetricBody::cylinder(0.8, 1, 3));
    SampleStream stream(24, 0);
    for (const auto& body : bodies) {
        double big = body.circumradius_bound();
        for (int j = 0; j < 500; ++j) {
            Vec u = sphere_direction_from(stream, 3);
            CHECK(body.radial(u) <= big * (1.0 + 1e-9));
        }
    }
}
