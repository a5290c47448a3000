#pragma once

// Shared helpers for the test suites: seeded random geometry generators and
// small independent oracles the Monte Carlo results are checked against.

#include <cmath>
#include <vector>

#include "dualcurv/dualcurv.hpp"

namespace testkit {

using namespace dualcurv;

// --- deterministic random geometry --------------------------------------

inline SymmetricBody random_symmetric_polytope(std::uint64_t seed, int n, int pairs) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        SampleStream stream(derive_seed(seed, attempt), 0);
        std::vector<Vec> normals;
        std::vector<double> offsets;
        for (int i = 0; i < pairs; ++i) {
            normals.push_back(sphere_direction_from(stream, n));
            offsets.push_back(0.6 + 1.2 * stream.u01());
        }
        if (rank_of(normals) != n) continue;
        return SymmetricBody::polytope_h(normals, offsets);
    }
}

inline Subspace random_subspace(std::uint64_t seed, int n, int k) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        SampleStream stream(derive_seed(seed, attempt), 1);
        std::vector<Vec> vs;
        for (int i = 0; i < k; ++i) vs.push_back(sphere_direction_from(stream, n));
        if (rank_of(vs) != k) continue;
        return make_subspace(vs);
    }
}

// Span of a random subset of the polytope's facet normals; these subspaces
// carry positive cone-volume mass, unlike generic random spans.
inline Subspace facet_normal_subspace(const PolytopeHBody& body, std::uint64_t seed, int target_dim) {
    const int n = body.dim;
    for (std::uint64_t attempt = 0;; ++attempt) {
        SampleStream stream(derive_seed(seed, 77 + attempt), 2);
        std::vector<Vec> vs;
        for (int i = 0; i < target_dim; ++i) {
            int idx = static_cast<int>(stream.u01() * body.pair_count());
            if (idx >= body.pair_count()) idx = body.pair_count() - 1;
            vs.push_back(body.normals[static_cast<size_t>(idx)]);
        }
        std::vector<Vec> basis = gram_schmidt(vs, /*strict=*/false);
        int d = static_cast<int>(basis.size());
        if (d < 1 || d >= n) continue;
        return Subspace(std::move(basis), n);
    }
}

inline GeneralPolytopeV random_v_polytope(std::uint64_t seed, int n, int nverts) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        SampleStream stream(derive_seed(seed, attempt), 3);
        Vec shift(n);
        for (int d = 0; d < n; ++d) shift[d] = stream.u01() - 0.5;
        std::vector<Vec> verts;
        for (int i = 0; i < nverts; ++i) {
            Vec v(n);
            for (int d = 0; d < n; ++d) v[d] = 2.0 * stream.u01() - 1.0 + shift[d];
            verts.push_back(v);
        }
        std::vector<Vec> diffs;
        for (const Vec& v : verts) diffs.push_back(v - verts.front());
        if (rank_of(diffs, 1e-6) != n) continue;
        return make_polytope_v(verts);
    }
}

inline SymmetricBody random_ellipsoid(std::uint64_t seed, int n) {
    SampleStream stream(seed, 4);
    std::vector<Vec> cols;
    for (int i = 0; i < n; ++i) cols.push_back(sphere_direction_from(stream, n));
    std::vector<Vec> rot = gram_schmidt(cols, /*strict=*/false);
    while (static_cast<int>(rot.size()) < n) {
        cols.push_back(sphere_direction_from(stream, n));
        rot = gram_schmidt(cols, /*strict=*/false);
    }
    Mat quad(n, n);
    std::vector<double> eig;
    for (int i = 0; i < n; ++i) eig.push_back(0.4 + 2.1 * stream.u01());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int t = 0; t < n; ++t) s += eig[static_cast<size_t>(t)] * rot[static_cast<size_t>(t)][i] * rot[static_cast<size_t>(t)][j];
            quad.at(i, j) = s;
        }
    }
    return SymmetricBody::ellipsoid(quad);
}

// --- independent oracles --------------------------------------------------

// ∫_0^{2pi} g(rho(theta)) dtheta by composite Simpson; dense enough that the
// kinks of polygonal radial functions are immaterial at 1e-8.
template <class RhoFn, class G>
inline double angular_integral_fn(RhoFn&& rho, G&& g, int panels = 1 << 18) {
    const double two_pi = 6.283185307179586476925286766559;
    const double h = two_pi / panels;
    auto f = [&](double theta) { return g(rho(theta)); };
    double s = f(0.0) + f(two_pi);
    for (int i = 1; i < panels; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

template <class Body, class G>
inline double angular_integral(const Body& body, G&& g, int panels = 1 << 18) {
    return angular_integral_fn(
        [&](double theta) {
            Vec u{std::cos(theta), std::sin(theta)};
            return body.radial(u);
        },
        g, panels);
}

// Radial function of the regular m-gon with circumradius R, vertex at angle 0.
inline double regular_polygon_radial(int sides, double circumradius, double theta) {
    const double pi = 3.14159265358979323846264338327950288;
    const double sector = 2.0 * pi / sides;
    double local = std::fmod(std::fmod(theta, sector) + sector, sector) - sector / 2.0;
    return circumradius * std::cos(sector / 2.0) / std::cos(local);
}

inline const PolytopeHBody& as_polytope(const SymmetricBody& body) {
    return std::get<PolytopeHBody>(body.variant());
}

inline SymmetricBody unit_cube(int n) {
    std::vector<Vec> normals;
    std::vector<double> offsets;
    for (int i = 0; i < n; ++i) {
        normals.push_back(unit_axis(n, i));
        offsets.push_back(1.0);
    }
    return SymmetricBody::polytope_h(normals, offsets);
}

inline GeneralPolytopeV square_v(double half) {
    return make_polytope_v({Vec{-half, -half}, Vec{half, -half}, Vec{half, half}, Vec{-half, half}});
}

}  // namespace testkit
