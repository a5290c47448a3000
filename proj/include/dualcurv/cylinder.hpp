#pragma once

#include <cmath>
#include <vector>

#include "dualcurv/errors.hpp"
#include "dualcurv/quadrature.hpp"

namespace dualcurv {

// Closed-form machinery for the cylinder (r B_k) x B_{n-k}: the dual
// curvature mass of the lateral normals S^{n-1} ∩ span{e_1..e_k} and the
// total mass reduce to double integrals over the unit square.
struct CylinderCase {
    int n = 3;
    int k = 1;
    double q = 2.0;
    double r = 1.0;

    void validate() const {
        check_dim(n);
        if (k < 1 || k > n - 1) throw ValidationError("cylinder case needs 1 <= k <= n-1");
        if (!(q > 0.0)) throw ValidationError("cylinder case needs q > 0");
        if (r < 0.0) throw ValidationError("cylinder case needs r >= 0");
    }
};

// c(q, k, n) = (q/n) k w_k (n-k) w_{n-k}.
inline double cylinder_constant(const CylinderCase& cs) {
    cs.validate();
    return cs.q / cs.n * cs.k * unit_ball_volume(cs.k) * (cs.n - cs.k) *
           unit_ball_volume(cs.n - cs.k);
}

// ∫₀¹∫₀¹ s^{q-1} t^{n-k-1} (r² + t²)^{(q-n)/2} dt ds. At r = 0 this is the
// monomial integral 1/(q(q-k)) whenever q > k.
inline double lateral_inner_integral(const CylinderCase& cs, const QuadratureSpec& spec) {
    cs.validate();
    const double se = cs.q - 1.0;
    const double te = cs.n - cs.k - 1.0;
    const double pe = 0.5 * (cs.q - cs.n);
    const double r2 = cs.r * cs.r;
    return integrate_unit_square(
        [=](double s, double t) {
            return std::pow(s, se) * std::pow(t, te) * std::pow(r2 + t * t, pe);
        },
        spec);
}

// ∫₀¹∫₀¹ s^{k-1} t^{n-k-1} (r²s² + t²)^{(q-n)/2} dt ds; 1/(k(q-k)) at r = 0.
inline double total_inner_integral(const CylinderCase& cs, const QuadratureSpec& spec) {
    cs.validate();
    const double se = cs.k - 1.0;
    const double te = cs.n - cs.k - 1.0;
    const double pe = 0.5 * (cs.q - cs.n);
    const double r2 = cs.r * cs.r;
    return integrate_unit_square(
        [=](double s, double t) {
            return std::pow(s, se) * std::pow(t, te) * std::pow(r2 * s * s + t * t, pe);
        },
        spec);
}

// Outer strip ∫₀¹∫₁^{1/s} of the lateral integrand. Substituting t -> 1/w and
// swapping the order collapses it to a smooth one-dimensional integral.
inline double outer_strip_integral(const CylinderCase& cs, const QuadratureSpec& spec) {
    cs.validate();
    const double we = cs.k - 1.0;
    const double pe = 0.5 * (cs.q - cs.n);
    const double r2 = cs.r * cs.r;
    double line =
        integrate_01([=](double w) { return std::pow(w, we) * std::pow(1.0 + r2 * w * w, pe); },
                     spec.rel_tol);
    return line / cs.q;
}

// Second route to the total integral: the substitution t -> t/s turns it into
// ∫₀¹∫₀^{1/s} of the lateral integrand, which splits into the unit square
// plus the outer strip.
inline double total_inner_integral_rewrite(const CylinderCase& cs, const QuadratureSpec& spec) {
    return lateral_inner_integral(cs, spec) + outer_strip_integral(cs, spec);
}

// Dual curvature mass of the lateral sphere S^{n-1} ∩ span{e_1..e_k}.
inline double cylinder_subspace_measure(const CylinderCase& cs, const QuadratureSpec& spec) {
    cs.validate();
    if (!(cs.r > 0.0)) throw ValidationError("cylinder measure needs r > 0");
    return cylinder_constant(cs) * std::pow(cs.r, cs.k) * lateral_inner_integral(cs, spec);
}

// Total dual curvature mass; evaluated along both algebraic routes, which
// must agree to the quadrature tolerance.
inline double cylinder_total_measure(const CylinderCase& cs, const QuadratureSpec& spec) {
    cs.validate();
    if (!(cs.r > 0.0)) throw ValidationError("cylinder measure needs r > 0");
    double direct = total_inner_integral(cs, spec);
    double rewrite = total_inner_integral_rewrite(cs, spec);
    double scale = std::max(std::abs(direct), std::abs(rewrite));
    if (std::abs(direct - rewrite) > 20.0 * spec.rel_tol * scale) {
        throw NoConvergenceError("total-measure evaluation routes disagree beyond tolerance");
    }
    return cylinder_constant(cs) * std::pow(cs.r, cs.k) * direct;
}

inline double cylinder_ratio(const CylinderCase& cs, const QuadratureSpec& spec) {
    cs.validate();
    if (!(cs.r > 0.0)) throw ValidationError("cylinder ratio needs r > 0");
    return lateral_inner_integral(cs, spec) / total_inner_integral(cs, spec);
}

struct CylinderSweepRow {
    double r = 0.0;
    double subspace_measure = 0.0;
    double total_measure = 0.0;
    double ratio = 0.0;
};

// Ratio sweep along a decreasing radius list; the rows trend toward the
// limit min{k/q, 1} as r -> 0+.
inline std::vector<CylinderSweepRow> cylinder_sweep(int n, int k, double q,
                                                    const std::vector<double>& r_list,
                                                    const QuadratureSpec& spec) {
    if (r_list.empty()) throw ValidationError("sweep needs at least one radius");
    std::vector<CylinderSweepRow> rows;
    rows.reserve(r_list.size());
    for (double r : r_list) {
        if (!(r > 0.0)) throw ValidationError("sweep radii must be positive");
        CylinderCase cs{n, k, q, r};
        CylinderSweepRow row;
        row.r = r;
        row.subspace_measure = cylinder_subspace_measure(cs, spec);
        row.total_measure = cylinder_total_measure(cs, spec);
        row.ratio = row.subspace_measure / row.total_measure;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace dualcurv
