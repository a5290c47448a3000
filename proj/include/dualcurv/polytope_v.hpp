#pragma once

#include <utility>
#include <limits>
#include <vector>

#include "dualcurv/errors.hpp"
#include "dualcurv/linalg.hpp"
#include "dualcurv/lp.hpp"

namespace dualcurv {

// Vertex-described polytope, not necessarily symmetric. Restricted to the
// plane and 3-space; membership goes through linear feasibility, so no hull
// construction is ever needed and redundant candidate vertices are harmless.
struct GeneralPolytopeV {
    int dim = 0;
    std::vector<Vec> vertices;

    double support(const Vec& x) const {
        double best = -std::numeric_limits<double>::infinity();
        for (const Vec& v : vertices) best = std::max(best, dot(v, x));
        return best;
    }

    std::pair<Vec, Vec> bounding_box() const {
        Vec lo = vertices.front(), hi = vertices.front();
        for (const Vec& v : vertices) {
            for (int d = 0; d < dim; ++d) {
                lo[d] = std::min(lo[d], v[d]);
                hi[d] = std::max(hi[d], v[d]);
            }
        }
        return {lo, hi};
    }
};

inline GeneralPolytopeV make_polytope_v(std::vector<Vec> vertices) {
    if (vertices.empty()) throw ValidationError("polytope needs at least one vertex");
    const int dim = vertices.front().size();
    if (dim < 2 || dim > 3) throw ValidationError("vertex polytopes support dimensions 2 and 3");
    std::vector<Vec> diffs;
    for (const Vec& v : vertices) {
        if (v.size() != dim) throw ValidationError("mixed vertex dimensions");
        diffs.push_back(v - vertices.front());
    }
    if (rank_of(diffs, 1e-9) != dim) {
        throw ValidationError("vertex set is not full-dimensional");
    }
    return GeneralPolytopeV{dim, std::move(vertices)};
}

inline bool contains(const GeneralPolytopeV& body, const Vec& x, double tol = 1e-9) {
    ConvexHullTester tester(body.vertices, tol);
    return tester.contains(x);
}

inline GeneralPolytopeV negated(const GeneralPolytopeV& body) {
    GeneralPolytopeV out = body;
    for (Vec& v : out.vertices) v = -v;
    return out;
}

// wa*A + wb*B as a vertex candidate set {wa*a_i + wb*b_j}. The true vertex
// set is a subset; hull membership stays exact on candidates.
inline GeneralPolytopeV minkowski_combination(const GeneralPolytopeV& a, const GeneralPolytopeV& b,
                                              double wa, double wb) {
    if (a.dim != b.dim) throw ValidationError("dimension mismatch in Minkowski combination");
    GeneralPolytopeV out;
    out.dim = a.dim;
    out.vertices.reserve(a.vertices.size() * b.vertices.size());
    for (const Vec& va : a.vertices) {
        for (const Vec& vb : b.vertices) out.vertices.push_back(wa * va + wb * vb);
    }
    return out;
}

// lambda*K + (1-lambda)*(-K).
inline GeneralPolytopeV minkowski_lambda(const GeneralPolytopeV& body, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw ValidationError("lambda must lie in (0, 1)");
    return minkowski_combination(body, negated(body), lambda, 1.0 - lambda);
}

// Same set, extreme candidates only; worth doing before a sampling loop.
inline GeneralPolytopeV pruned(const GeneralPolytopeV& body) {
    GeneralPolytopeV out;
    out.dim = body.dim;
    out.vertices = prune_to_extreme_points(body.vertices);
    return out;
}

}  // namespace dualcurv
