#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "dualcurv/errors.hpp"
#include "dualcurv/linalg.hpp"

namespace dualcurv {
namespace lp {

// Plain dense tableau simplex with Bland's rule. Problem sizes here are tens
// of rows and columns, so no factorization machinery is warranted.
//
// Standard form: min c'x  s.t.  Ax = b, x >= 0, with b >= 0 and an initial
// basis of identity columns supplied by the caller.
class Tableau {
 public:
    Tableau(int rows, int cols) : m_(rows), nv_(cols), t_((rows + 1) * (cols + 1), 0.0), basis_(rows, -1) {}

    double& at(int r, int c) { return t_[static_cast<size_t>(r) * (nv_ + 1) + c]; }
    double at(int r, int c) const { return t_[static_cast<size_t>(r) * (nv_ + 1) + c]; }
    double& rhs(int r) { return at(r, nv_); }
    double& cost(int c) { return at(m_, c); }
    void set_basis(int r, int var) { basis_[r] = var; }
    int basis(int r) const { return basis_[r]; }

    // Price out the basic columns so reduced costs start consistent.
    void price_out() {
        for (int r = 0; r < m_; ++r) {
            double f = cost(basis_[r]);
            if (f == 0.0) continue;
            for (int c = 0; c <= nv_; ++c) at(m_, c) -= f * at(r, c);
        }
    }

    // Returns the optimal objective value (negated accumulated cost row).
    double solve() {
        constexpr double kEps = 1e-11;
        const int iter_cap = 200 * (m_ + nv_ + 10);
        for (int iter = 0; iter < iter_cap; ++iter) {
            int enter = -1;
            for (int c = 0; c < nv_; ++c) {
                if (at(m_, c) < -kEps) {
                    enter = c;
                    break;
                }
            }
            if (enter < 0) return -at(m_, nv_);
            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int r = 0; r < m_; ++r) {
                double a = at(r, enter);
                if (a > kEps) {
                    double ratio = rhs(r) / a;
                    if (ratio < best_ratio - kEps ||
                        (ratio < best_ratio + kEps && (leave < 0 || basis_[r] < basis_[leave]))) {
                        best_ratio = ratio;
                        leave = r;
                    }
                }
            }
            if (leave < 0) throw Error("simplex: unbounded problem");
            pivot(leave, enter);
        }
        throw Error("simplex: iteration cap reached");
    }

 private:
    void pivot(int leave, int enter) {
        double p = at(leave, enter);
        for (int c = 0; c <= nv_; ++c) at(leave, c) /= p;
        for (int r = 0; r <= m_; ++r) {
            if (r == leave) continue;
            double f = at(r, enter);
            if (f == 0.0) continue;
            for (int c = 0; c <= nv_; ++c) at(r, c) -= f * at(leave, c);
        }
        basis_[leave] = enter;
    }

    int m_, nv_;
    std::vector<double> t_;
    std::vector<int> basis_;
};

}  // namespace lp

// Support value of the symmetric H-polytope {y : |<a_i, y>| <= b_i} in
// direction x, by maximizing <x, y>. Offsets must be positive (origin
// interior), which makes the slack basis immediately feasible.
inline double polytope_support_lp(const std::vector<Vec>& normals, const std::vector<double>& offsets,
                                  const Vec& x) {
    const int n = x.size();
    const int p = static_cast<int>(normals.size());
    const int m = 2 * p;
    const int nv = 2 * n + m;  // y+ , y-, slacks
    lp::Tableau tab(m, nv);
    for (int i = 0; i < p; ++i) {
        for (int s = 0; s < 2; ++s) {
            int r = 2 * i + s;
            double sign = s == 0 ? 1.0 : -1.0;
            for (int j = 0; j < n; ++j) {
                tab.at(r, j) = sign * normals[i][j];
                tab.at(r, n + j) = -sign * normals[i][j];
            }
            tab.at(r, 2 * n + r) = 1.0;
            tab.rhs(r) = offsets[i];
            tab.set_basis(r, 2 * n + r);
        }
    }
    for (int j = 0; j < n; ++j) {
        tab.cost(j) = -x[j];
        tab.cost(n + j) = x[j];
    }
    tab.price_out();
    return -tab.solve();
}

// Membership test x in conv(points) via phase-1 feasibility:
// find lambda >= 0 with sum lambda_i v_i = x and sum lambda_i = 1.
// Reusable so the Minkowski-combination integrators can test millions of
// points against one candidate set.
class ConvexHullTester {
 public:
    explicit ConvexHullTester(std::vector<Vec> points, double tol = 1e-9)
        : points_(std::move(points)), tol_(tol) {
        if (points_.empty()) throw ValidationError("empty point set");
        dim_ = points_.front().size();
        for (const Vec& v : points_) {
            if (v.size() != dim_) throw ValidationError("mixed dimensions in point set");
        }
    }

    int dim() const { return dim_; }
    const std::vector<Vec>& points() const { return points_; }

    bool contains(const Vec& x) {
        const int n = dim_;
        const int m = n + 1;
        const int np = static_cast<int>(points_.size());
        const int nv = np + m;  // lambdas + artificials
        lp::Tableau tab(m, nv);
        for (int r = 0; r < n; ++r) {
            double b = x[r];
            double sign = b >= 0.0 ? 1.0 : -1.0;
            for (int c = 0; c < np; ++c) tab.at(r, c) = sign * points_[c][r];
            tab.at(r, np + r) = 1.0;
            tab.rhs(r) = sign * b;
            tab.set_basis(r, np + r);
        }
        for (int c = 0; c < np; ++c) tab.at(n, c) = 1.0;
        tab.at(n, np + n) = 1.0;
        tab.rhs(n) = 1.0;
        tab.set_basis(n, np + n);
        for (int c = np; c < nv; ++c) tab.cost(c) = 1.0;
        tab.price_out();
        double infeasibility = tab.solve();
        // Scale-aware acceptance: the artificial sum is in the units of x.
        double scale = 1.0 + norm(x);
        return infeasibility <= tol_ * scale;
    }

 private:
    std::vector<Vec> points_;
    double tol_;
    int dim_ = 0;
};

// Drop candidate points that lie in the hull of the remaining ones. The
// result spans the same convex set with a far smaller description.
inline std::vector<Vec> prune_to_extreme_points(const std::vector<Vec>& points, double tol = 1e-9) {
    std::vector<Vec> kept;
    kept.reserve(points.size());
    // Dedupe first so ties cannot eliminate each other.
    for (const Vec& v : points) {
        bool dup = false;
        for (const Vec& w : kept) {
            if (distance(v, w) <= 1e-12 * (1.0 + norm(v))) {
                dup = true;
                break;
            }
        }
        if (!dup) kept.push_back(v);
    }
    if (kept.size() <= 2) return kept;
    for (size_t i = kept.size(); i-- > 0;) {
        std::vector<Vec> rest;
        rest.reserve(kept.size() - 1);
        for (size_t j = 0; j < kept.size(); ++j) {
            if (j != i) rest.push_back(kept[j]);
        }
        ConvexHullTester tester(rest, tol);
        if (tester.contains(kept[i])) kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return kept;
}

}  // namespace dualcurv
