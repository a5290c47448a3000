#pragma once

#include <vector>

#include "dualcurv/errors.hpp"
#include "dualcurv/linalg.hpp"

namespace dualcurv {

// Unit normals sit at scale 1, so an absolute band on |v - P_L v| decides
// membership of a direction in a subspace.
inline constexpr double kSubspaceMembershipTol = 1e-8;

// Proper linear subspace of R^n held as an orthonormal basis.
class Subspace {
 public:
    Subspace(std::vector<Vec> basis, int ambient) : basis_(std::move(basis)), ambient_(ambient) {}

    int dim() const { return static_cast<int>(basis_.size()); }
    int ambient() const { return ambient_; }
    const std::vector<Vec>& basis() const { return basis_; }

    Vec project(const Vec& v) const {
        Vec p(v.size());
        for (const Vec& e : basis_) p += dot(v, e) * e;
        return p;
    }

    double distance(const Vec& v) const { return norm(v - project(v)); }

    bool contains_direction(const Vec& unit_v, double tol = kSubspaceMembershipTol) const {
        double d2 = norm2(unit_v);
        for (const Vec& e : basis_) {
            double c = dot(unit_v, e);
            d2 -= c * c;
        }
        return d2 <= tol * tol;
    }

    // True when this subspace is exactly span{e_1, ..., e_k}.
    bool is_leading_axes_block(int k) const {
        if (dim() != k) return false;
        for (const Vec& e : basis_) {
            for (int d = k; d < ambient_; ++d) {
                if (std::abs(e[d]) > 1e-12) return false;
            }
        }
        return true;
    }

 private:
    std::vector<Vec> basis_;
    int ambient_;
};

// Orthonormalizes the given spanning set. Dependent inputs are an error, and
// the span must be proper.
inline Subspace make_subspace(const std::vector<Vec>& vectors) {
    if (vectors.empty()) throw ValidationError("subspace needs at least one vector");
    const int n = vectors.front().size();
    for (const Vec& v : vectors) {
        if (v.size() != n) throw ValidationError("mixed dimensions in subspace basis");
    }
    if (static_cast<int>(vectors.size()) >= n) {
        throw ValidationError("subspace must be proper: fewer than n vectors");
    }
    std::vector<Vec> basis = gram_schmidt(vectors, /*strict=*/true);
    return Subspace(std::move(basis), n);
}

inline Subspace span_of_axes(int n, const std::vector<int>& axes) {
    std::vector<Vec> vs;
    vs.reserve(axes.size());
    for (int a : axes) vs.push_back(unit_axis(n, a));
    return make_subspace(vs);
}

}  // namespace dualcurv
