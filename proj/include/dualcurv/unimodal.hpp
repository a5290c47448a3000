#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "dualcurv/bodies.hpp"
#include "dualcurv/polytope_v.hpp"
#include "dualcurv/quadrature.hpp"
#include "dualcurv/rng.hpp"

namespace dualcurv {

// Even unimodal test functions f(x) = ||x||_M^p with a negative exponent:
// the superlevel set {f >= alpha} is the dilate alpha^{1/p} M, closed,
// convex and symmetric. Integrability over a full-dimensional body needs
// p in (-n, 0).
class UnimodalFn {
 public:
    static UnimodalFn power_radial(double p, int dim) {
        return UnimodalFn(SymmetricBody::ball(1.0, dim), p);
    }

    static UnimodalFn gauge_power(SymmetricBody gauge_body, double p) {
        return UnimodalFn(std::move(gauge_body), p);
    }

    int dim() const { return gauge_body_.dim(); }
    double exponent() const { return p_; }
    const SymmetricBody& gauge_body() const { return gauge_body_; }

    // Minkowski gauge ||x||_M; zero at the origin.
    double gauge(const Vec& x) const {
        double nx = norm(x);
        if (nx == 0.0) return 0.0;
        return nx / gauge_body_.radial(x * (1.0 / nx));
    }

    double operator()(const Vec& x) const { return std::pow(gauge(x), p_); }

    // L_f^+(alpha) = superlevel_scale(alpha) * M.
    double superlevel_scale(double alpha) const { return std::pow(alpha, 1.0 / p_); }

 private:
    UnimodalFn(SymmetricBody gauge_body, double p) : gauge_body_(std::move(gauge_body)), p_(p) {
        if (!(p < 0.0) || !(p > -gauge_body_.dim())) {
            throw NonIntegrableError("unimodal exponent must lie in (-n, 0)");
        }
    }

    SymmetricBody gauge_body_;
    double p_;
};

namespace detail {

// Monte Carlo integral over a vertex polytope of a per-point functional,
// by rejection from the bounding box. `fn(tester, x)` must return 0 for
// rejected points and may assume |x| >= 1e-12 (the origin is resampled).
template <class Fn>
inline MeasureEstimate box_rejection_integral(const GeneralPolytopeV& body, Fn fn,
                                              const QuadratureSpec& spec) {
    spec.validate();
    auto [lo, hi] = body.bounding_box();
    double box_volume = 1.0;
    for (int d = 0; d < body.dim; ++d) box_volume *= hi[d] - lo[d];

    struct Kernel {
        const GeneralPolytopeV* body;
        const Fn* fn;
        Vec lo, hi;
        std::uint64_t seed;
        ConvexHullTester tester;

        Kernel(const GeneralPolytopeV* b, const Fn* f, Vec l, Vec h, std::uint64_t s)
            : body(b), fn(f), lo(l), hi(h), seed(s), tester(b->vertices) {}
        Kernel(const Kernel& o) : Kernel(o.body, o.fn, o.lo, o.hi, o.seed) {}

        void operator()(std::int64_t i, double* m) {
            SampleStream stream(seed, i);
            Vec x;
            do {
                x = box_point_from(stream, lo, hi);
            } while (norm(x) < 1e-12);
            double v = (*fn)(tester, x);
            m[0] = v;
            m[1] = v * v;
        }
    };
    Kernel kernel(&body, &fn, lo, hi, spec.seed);
    auto sums = accumulate_chunked(spec.samples, spec.chunk, 2, kernel);
    return detail::estimate_from_sums(sums[0], sums[1], spec.samples, spec.seed, box_volume);
}

}  // namespace detail

// ∫_K f for an even unimodal f; the (measure-zero) singular point at the
// origin is resampled.
inline MeasureEstimate lemma_integral(const GeneralPolytopeV& body, const UnimodalFn& f,
                                      const QuadratureSpec& spec) {
    if (f.dim() != body.dim) throw ValidationError("unimodal function dimension mismatch");
    GeneralPolytopeV lean = pruned(body);
    auto fn = [&f](ConvexHullTester& tester, const Vec& x) {
        return tester.contains(x) ? f(x) : 0.0;
    };
    return detail::box_rejection_integral(lean, fn, spec);
}

struct SuperlevelRow {
    double alpha = 0.0;
    double scale = 0.0;  // superlevel set = scale * M
    double volume_combination = 0.0;
    double volume_original = 0.0;
    double sigma = 0.0;
    bool match = false;
};

struct LemmaReport {
    MeasureEstimate lhs;  // over lambda K + (1-lambda)(-K)
    MeasureEstimate rhs;  // over K
    double sigma_combined = 0.0;
    bool pass = false;
    bool near_equality = false;
    std::vector<SuperlevelRow> superlevel_diagnostics;  // filled when near equality
};

// Compares ∫ f over the Minkowski combination against ∫ f over the body.
// When the two sides are statistically indistinguishable, the equality
// condition is probed through superlevel-set volumes on a scale grid.
inline LemmaReport lemma_check(const GeneralPolytopeV& body, double lambda, const UnimodalFn& f,
                               const QuadratureSpec& spec) {
    GeneralPolytopeV combination = pruned(minkowski_lambda(body, lambda));
    GeneralPolytopeV original = pruned(body);

    QuadratureSpec lhs_spec = spec;
    lhs_spec.seed = derive_seed(spec.seed, 1);
    QuadratureSpec rhs_spec = spec;
    rhs_spec.seed = derive_seed(spec.seed, 2);

    LemmaReport report;
    report.lhs = lemma_integral(combination, f, lhs_spec);
    report.rhs = lemma_integral(original, f, rhs_spec);
    report.sigma_combined = std::hypot(report.lhs.std_err, report.rhs.std_err);
    report.pass = report.lhs.value >= report.rhs.value - 3.0 * report.sigma_combined;
    report.near_equality =
        std::abs(report.lhs.value - report.rhs.value) <= 2.0 * report.sigma_combined;

    if (report.near_equality) {
        double top = 0.0;
        for (const Vec& v : combination.vertices) top = std::max(top, f.gauge(v));
        for (const Vec& v : original.vertices) top = std::max(top, f.gauge(v));
        QuadratureSpec vol_spec = spec;
        vol_spec.samples = std::max<std::int64_t>(spec.samples / 4, 1000);
        for (int j = 1; j <= 7; ++j) {
            double scale = top * j / 8.0;
            auto indicator = [&](ConvexHullTester& tester, const Vec& x) {
                return (f.gauge(x) <= scale && tester.contains(x)) ? 1.0 : 0.0;
            };
            SuperlevelRow row;
            row.scale = scale;
            row.alpha = std::pow(scale, f.exponent());
            QuadratureSpec a = vol_spec;
            a.seed = derive_seed(spec.seed, 100 + static_cast<std::uint64_t>(j));
            QuadratureSpec b = vol_spec;
            b.seed = derive_seed(spec.seed, 200 + static_cast<std::uint64_t>(j));
            MeasureEstimate va = detail::box_rejection_integral(combination, indicator, a);
            MeasureEstimate vb = detail::box_rejection_integral(original, indicator, b);
            row.volume_combination = va.value;
            row.volume_original = vb.value;
            row.sigma = std::hypot(va.std_err, vb.std_err);
            row.match = std::abs(va.value - vb.value) <= 2.0 * row.sigma + 1e-12;
            report.superlevel_diagnostics.push_back(row);
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Brunn-Minkowski check on vertex polytopes.

struct BrunnMinkowskiReport {
    double lhs = 0.0;  // vol((1-lambda)K0 + lambda K1)^{1/n}
    double rhs = 0.0;  // (1-lambda)vol(K0)^{1/n} + lambda vol(K1)^{1/n}
    double sigma_combined = 0.0;
    bool pass = false;
    bool equality = false;    // statistical, |lhs-rhs| <= 3 sigma
    bool homothetic = false;  // geometric certificate
    double volume_combination = 0.0;
    double volume_k0 = 0.0;
    double volume_k1 = 0.0;
};

namespace detail {

inline MeasureEstimate polytope_volume_mc(const GeneralPolytopeV& body, const QuadratureSpec& spec) {
    auto indicator = [](ConvexHullTester& tester, const Vec& x) {
        return tester.contains(x) ? 1.0 : 0.0;
    };
    return box_rejection_integral(body, indicator, spec);
}

// Homothety K1 = t + mu K0 is equivalent to h_{K1}(u) = mu h_{K0}(u) + <t,u>
// for all u; fit (mu, t) by least squares over a fixed direction set and
// accept on a tiny residual.
inline bool homothety_detected(const GeneralPolytopeV& k0, const GeneralPolytopeV& k1,
                               double tol = 1e-9) {
    const int n = k0.dim;
    const int dirs = 96;
    const int unknowns = n + 1;  // mu, t
    Mat ata(unknowns, unknowns);
    Vec atb(unknowns);
    double scale = 1.0;
    for (int j = 0; j < dirs; ++j) {
        Vec u = sphere_direction(n, 0xB0D1E5ull, j);
        double h0 = k0.support(u);
        double h1 = k1.support(u);
        scale = std::max(scale, std::abs(h1));
        double row[kMaxDim + 1];
        row[0] = h0;
        for (int d = 0; d < n; ++d) row[d + 1] = u[d];
        for (int a = 0; a < unknowns; ++a) {
            for (int b = 0; b < unknowns; ++b) ata.at(a, b) += row[a] * row[b];
            atb[a] += row[a] * h1;
        }
    }
    Vec theta;
    if (!solve_linear(ata, atb, theta, 1e-14)) return false;
    if (theta[0] < 0.0) return false;
    double ss = 0.0;
    for (int j = 0; j < dirs; ++j) {
        Vec u = sphere_direction(n, 0xB0D1E5ull, j);
        double fit = theta[0] * k0.support(u);
        for (int d = 0; d < n; ++d) fit += theta[d + 1] * u[d];
        double res = k1.support(u) - fit;
        ss += res * res;
    }
    return std::sqrt(ss / dirs) <= tol * scale;
}

}  // namespace detail

inline BrunnMinkowskiReport brunn_minkowski_check(const GeneralPolytopeV& k0,
                                                  const GeneralPolytopeV& k1, double lambda,
                                                  const QuadratureSpec& spec) {
    if (k0.dim != k1.dim) throw ValidationError("dimension mismatch");
    if (!(lambda > 0.0 && lambda < 1.0)) throw ValidationError("lambda must lie in (0, 1)");
    const int n = k0.dim;
    GeneralPolytopeV combination = pruned(minkowski_combination(k0, k1, 1.0 - lambda, lambda));
    GeneralPolytopeV a = pruned(k0);
    GeneralPolytopeV b = pruned(k1);

    auto volume = [&](const GeneralPolytopeV& body, std::uint64_t salt) {
        QuadratureSpec s = spec;
        s.seed = derive_seed(spec.seed, salt);
        return detail::polytope_volume_mc(body, s);
    };
    MeasureEstimate vc = volume(combination, 11);
    MeasureEstimate v0 = volume(a, 12);
    MeasureEstimate v1 = volume(b, 13);

    auto nth_root = [n](double v) { return std::pow(v, 1.0 / n); };
    auto root_sigma = [n, nth_root](const MeasureEstimate& est) {
        if (est.value <= 0.0) return 0.0;
        return est.std_err / (n * std::pow(est.value, 1.0 - 1.0 / n));
    };

    BrunnMinkowskiReport report;
    report.volume_combination = vc.value;
    report.volume_k0 = v0.value;
    report.volume_k1 = v1.value;
    report.lhs = nth_root(vc.value);
    report.rhs = (1.0 - lambda) * nth_root(v0.value) + lambda * nth_root(v1.value);
    double sigma_rhs = std::hypot((1.0 - lambda) * root_sigma(v0), lambda * root_sigma(v1));
    report.sigma_combined = std::hypot(root_sigma(vc), sigma_rhs);
    report.pass = report.lhs >= report.rhs - 3.0 * report.sigma_combined;
    report.equality = std::abs(report.lhs - report.rhs) <= 3.0 * report.sigma_combined + 1e-12;
    report.homothetic = detail::homothety_detected(a, b);
    return report;
}

}  // namespace dualcurv
