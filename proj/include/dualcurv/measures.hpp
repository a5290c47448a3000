#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "dualcurv/bodies.hpp"
#include "dualcurv/errors.hpp"
#include "dualcurv/quadrature.hpp"
#include "dualcurv/subspace.hpp"

namespace dualcurv {

// ---------------------------------------------------------------------------
// Spherical regions. The concentration statements only ever quantify over
// subspace spheres S^{n-1} ∩ L and their complements, so membership stays
// decidable; arbitrary Borel sets are out of scope.

enum class RegionKind { full_sphere, subspace_sphere, complement };

struct SphericalRegion {
    RegionKind kind = RegionKind::full_sphere;
    std::optional<Subspace> subspace;

    static SphericalRegion full() { return {}; }
    static SphericalRegion sphere_in(Subspace L) {
        return {RegionKind::subspace_sphere, std::move(L)};
    }
    static SphericalRegion complement_of(Subspace L) {
        return {RegionKind::complement, std::move(L)};
    }
};

struct DualCurvatureQuery {
    SymmetricBody body;
    double q = 1.0;
    SphericalRegion region;
    std::optional<SymmetricBody> gauge;  // defaults to the unit ball
    double tie_tol = kDefaultTieTol;
};

namespace detail {

// Per-variant fused evaluation of rho(u) together with region membership of
// the boundary point's supporting normals. Tie directions are included on
// the generous side of the band; they carry measure zero.

struct BallEval {
    double radius;
    RegionKind kind;
    const Subspace* L;

    double rho_and_member(const Vec& u, bool& member) const {
        switch (kind) {
            case RegionKind::full_sphere: member = true; break;
            case RegionKind::subspace_sphere: member = L->contains_direction(u); break;
            case RegionKind::complement: member = !L->contains_direction(u); break;
        }
        return radius;
    }
};

struct EllipsoidEval {
    const EllipsoidBody* body;
    RegionKind kind;
    const Subspace* L;

    double rho_and_member(const Vec& u, bool& member) const {
        Vec w = mat_vec(body->quad, u);
        double q = dot(w, u);
        if (kind == RegionKind::full_sphere) {
            member = true;
        } else {
            bool in = L->contains_direction(w * (1.0 / norm(w)));
            member = (kind == RegionKind::subspace_sphere) ? in : !in;
        }
        return 1.0 / std::sqrt(q);
    }
};

struct PolytopeEval {
    const PolytopeHBody* body;
    RegionKind kind;
    double tie_tol;
    std::vector<std::uint8_t> normal_in_L;  // per pair; sign-invariant

    PolytopeEval(const PolytopeHBody* b, RegionKind rk, const Subspace* L, double tie)
        : body(b), kind(rk), tie_tol(tie) {
        if (kind != RegionKind::full_sphere) {
            normal_in_L.reserve(b->normals.size());
            for (const Vec& a : b->normals) {
                normal_in_L.push_back(L->contains_direction(a) ? 1 : 0);
            }
        }
    }

    double rho_and_member(const Vec& u, bool& member) const {
        const auto& normals = body->normals;
        const auto& offsets = body->offsets;
        const size_t p = normals.size();
        double den[kMaxHalfspacePairs];
        double best_off = 1.0, best_den = 0.0;
        for (size_t i = 0; i < p; ++i) {
            double d = std::abs(dot(normals[i], u));
            den[i] = d;
            if (offsets[i] * best_den < best_off * d) {
                best_off = offsets[i];
                best_den = d;
            }
        }
        double rho = best_off / best_den;
        if (kind == RegionKind::full_sphere) {
            member = true;
            return rho;
        }
        double thr = rho * (1.0 + tie_tol);
        member = false;
        if (kind == RegionKind::subspace_sphere) {
            for (size_t i = 0; i < p; ++i) {
                if (normal_in_L[i] && offsets[i] <= den[i] * thr) {
                    member = true;
                    break;
                }
            }
        } else {
            for (size_t i = 0; i < p; ++i) {
                if (!normal_in_L[i] && offsets[i] <= den[i] * thr) {
                    member = true;
                    break;
                }
            }
        }
        return rho;
    }
};

struct CylinderEval {
    const CylinderBody* body;
    RegionKind kind;
    double tie_tol;
    const Subspace* L;
    bool lateral_block;  // L is exactly span{e_1..e_k}: analytic membership

    CylinderEval(const CylinderBody* b, RegionKind rk, const Subspace* sub, double tie)
        : body(b), kind(rk), tie_tol(tie), L(sub) {
        lateral_block = kind != RegionKind::full_sphere && L->is_leading_axes_block(b->k);
    }

    double rho_and_member(const Vec& u, bool& member) const {
        double rho = body->radial(u);
        if (kind == RegionKind::full_sphere) {
            member = true;
            return rho;
        }
        bool lat = body->lateral_attains(u, tie_tol);
        bool cap = body->cap_attains(u, tie_tol);
        bool in;
        if (lateral_block) {
            in = lat;
            if (kind == RegionKind::complement) {
                member = cap;
                return rho;
            }
        } else {
            in = (lat && L->contains_direction(body->lateral_normal(u))) ||
                 (cap && L->contains_direction(body->cap_normal(u)));
            if (kind == RegionKind::complement) {
                member = (lat && !L->contains_direction(body->lateral_normal(u))) ||
                         (cap && !L->contains_direction(body->cap_normal(u)));
                return rho;
            }
        }
        member = in;
        return rho;
    }
};

template <class BodyT>
auto make_region_eval(const BodyT& body, const SphericalRegion& region, double tie_tol) {
    const Subspace* L = region.subspace ? &*region.subspace : nullptr;
    if constexpr (std::is_same_v<BodyT, Ball>) {
        return BallEval{body.radius, region.kind, L};
    } else if constexpr (std::is_same_v<BodyT, EllipsoidBody>) {
        return EllipsoidEval{&body, region.kind, L};
    } else if constexpr (std::is_same_v<BodyT, PolytopeHBody>) {
        return PolytopeEval(&body, region.kind, L, tie_tol);
    } else {
        return CylinderEval(&body, region.kind, L, tie_tol);
    }
}

inline void validate_query(const DualCurvatureQuery& query) {
    if (!(query.q > 0.0)) throw ValidationError("dual curvature exponent q must be positive");
    if (!(query.tie_tol > 0.0)) throw ValidationError("tie_tol must be positive");
    if (query.region.kind != RegionKind::full_sphere) {
        if (!query.region.subspace) throw ValidationError("region lacks its subspace");
        if (query.region.subspace->ambient() != query.body.dim()) {
            throw ValidationError("subspace ambient dimension does not match body");
        }
    }
    if (query.gauge && query.gauge->dim() != query.body.dim()) {
        throw ValidationError("gauge body dimension does not match");
    }
}

template <class Eval>
MeasureEstimate dual_curvature_spherical_impl(const Eval& eval, int n, double q,
                                              const SymmetricBody* gauge,
                                              const QuadratureSpec& spec) {
    struct Kernel {
        const Eval* eval;
        const SymmetricBody* gauge;
        int n;
        double q;
        std::uint64_t seed;
        void operator()(std::int64_t i, double* m) const {
            SampleStream stream(seed, i);
            Vec u = sphere_direction_from(stream, n);
            bool member = false;
            double rho = eval->rho_and_member(u, member);
            double v = 0.0;
            if (member) {
                v = std::pow(rho, q);
                if (gauge) v *= std::pow(gauge->radial(u), static_cast<double>(n) - q);
            }
            m[0] = v;
            m[1] = v * v;
        }
    };
    Kernel kernel{&eval, gauge, n, q, spec.seed};
    auto sums = accumulate_chunked(spec.samples, spec.chunk, 2, kernel);
    double scale = sphere_surface_area(n) / static_cast<double>(n);
    return detail::estimate_from_sums(sums[0], sums[1], spec.samples, spec.seed, scale);
}

}  // namespace detail

// True iff the boundary point rho(u)u has a supporting normal inside L.
inline bool alpha_star_member(const SymmetricBody& body, const Vec& u, const Subspace& L,
                              double tie_tol = kDefaultTieTol) {
    if (L.ambient() != body.dim()) throw ValidationError("subspace/body dimension mismatch");
    SphericalRegion region = SphericalRegion::sphere_in(L);
    return std::visit(
        [&](const auto& b) {
            auto eval = detail::make_region_eval(b, region, tie_tol);
            bool member = false;
            eval.rho_and_member(u, member);
            return member;
        },
        body.variant());
}

// Monte Carlo estimate of (1/n) ∫ over the region's reverse radial Gauss
// image of rho_M(u)^{n-q} rho_K(u)^q, the q-th dual curvature measure when
// the gauge M is the unit ball.
inline MeasureEstimate dual_curvature(const DualCurvatureQuery& query, const QuadratureSpec& spec) {
    spec.validate();
    detail::validate_query(query);
    const int n = query.body.dim();
    const SymmetricBody* gauge = query.gauge ? &*query.gauge : nullptr;
    return std::visit(
        [&](const auto& b) {
            auto eval = detail::make_region_eval(b, query.region, query.tie_tol);
            return detail::dual_curvature_spherical_impl(eval, n, query.q, gauge, spec);
        },
        query.body.variant());
}

// Independent estimator of the same measure in Euclidean coordinates:
// (q/n) ∫ over {x in K : x/|x| in the region} of rho_M(x)^{n-q}, sampled by
// rejection from the bounding box. Used as a cross-check oracle.
inline MeasureEstimate dual_curvature_euclidean(const DualCurvatureQuery& query,
                                                const QuadratureSpec& spec) {
    spec.validate();
    detail::validate_query(query);
    const int n = query.body.dim();
    const double half_width = query.body.circumradius_bound();
    const double box_volume = std::pow(2.0 * half_width, n);
    const SymmetricBody* gauge = query.gauge ? &*query.gauge : nullptr;

    return std::visit(
        [&](const auto& b) {
            auto eval = detail::make_region_eval(b, query.region, query.tie_tol);
            using Eval = decltype(eval);
            struct Kernel {
                const std::decay_t<decltype(b)>* body;
                const Eval* eval;
                const SymmetricBody* gauge;
                int n;
                double q;
                double half_width;
                std::uint64_t seed;
                void operator()(std::int64_t i, double* m) const {
                    SampleStream stream(seed, i);
                    Vec x(n);
                    double nx = 0.0;
                    do {
                        for (int d = 0; d < n; ++d) x[d] = (2.0 * stream.u01() - 1.0) * half_width;
                        nx = norm(x);
                    } while (nx < 1e-12);  // the radial singularity sits at a measure-zero point
                    double v = 0.0;
                    if (body->contains(x)) {
                        Vec u = x * (1.0 / nx);
                        bool member = false;
                        eval->rho_and_member(u, member);
                        if (member) {
                            double rho_gauge = gauge ? gauge->radial(u) / nx : 1.0 / nx;
                            v = std::pow(rho_gauge, static_cast<double>(n) - q);
                        }
                    }
                    m[0] = v;
                    m[1] = v * v;
                }
            };
            Kernel kernel{&b, &eval, gauge, n, query.q, half_width, spec.seed};
            auto sums = accumulate_chunked(spec.samples, spec.chunk, 2, kernel);
            double scale = query.q / static_cast<double>(n) * box_volume;
            return detail::estimate_from_sums(sums[0], sums[1], spec.samples, spec.seed, scale);
        },
        query.body.variant());
}

// i-th dual quermassintegral, i.e. the full-sphere measure at q = i.
inline MeasureEstimate dual_quermass(const SymmetricBody& body, int i, const QuadratureSpec& spec) {
    if (i < 1 || i > body.dim()) {
        throw ValidationError("dual quermassintegral index must satisfy 0 < i <= n");
    }
    DualCurvatureQuery query{body, static_cast<double>(i), SphericalRegion::full(), {},
                             kDefaultTieTol};
    return dual_curvature(query, spec);
}

// ---------------------------------------------------------------------------
// Exact cone-volume oracle for H-polytopes in dimension <= 4.

namespace detail {

inline std::vector<Vec> hrep_vertices(int d, const std::vector<Vec>& rows_a,
                                      const std::vector<double>& rows_b, double feas_tol);

// Volume of {y : <a_i, y> <= b_i} in dimension d <= 3 by recursive cone
// decomposition from an interior point; facet volumes come from the same
// routine one dimension down.
inline double hrep_volume(int d, std::vector<Vec> rows_a, std::vector<double> rows_b) {
    double scale = 0.0;
    for (double b : rows_b) scale = std::max(scale, std::abs(b));
    scale = std::max(scale, 1.0);

    // Drop vacuous rows; detect trivially empty systems.
    {
        std::vector<Vec> fa;
        std::vector<double> fb;
        for (size_t i = 0; i < rows_a.size(); ++i) {
            if (norm(rows_a[i]) <= 1e-12) {
                if (rows_b[i] < -1e-9 * scale) return 0.0;
                continue;
            }
            fa.push_back(rows_a[i]);
            fb.push_back(rows_b[i]);
        }
        rows_a = std::move(fa);
        rows_b = std::move(fb);
    }

    if (d == 1) {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < rows_a.size(); ++i) {
            double a = rows_a[i][0];
            if (a > 0.0) hi = std::min(hi, rows_b[i] / a);
            else lo = std::max(lo, rows_b[i] / a);
        }
        if (!std::isfinite(lo) || !std::isfinite(hi)) {
            throw ValidationError("unbounded section in facet volume recursion");
        }
        return std::max(0.0, hi - lo);
    }

    double feas_tol = 1e-9 * scale;
    std::vector<Vec> verts = hrep_vertices(d, rows_a, rows_b, feas_tol);
    if (static_cast<int>(verts.size()) < d + 1) return 0.0;
    Vec z(d);
    for (const Vec& v : verts) z += v;
    z *= 1.0 / static_cast<double>(verts.size());

    double vol = 0.0;
    for (size_t i = 0; i < rows_a.size(); ++i) {
        double an = norm(rows_a[i]);
        double dist = (rows_b[i] - dot(rows_a[i], z)) / an;
        if (dist <= 0.0) continue;
        Vec nu = rows_a[i] * (1.0 / an);
        Vec x0 = z + dist * nu;
        std::vector<Vec> basis = orthonormal_complement(nu);
        std::vector<Vec> sub_a;
        std::vector<double> sub_b;
        sub_a.reserve(rows_a.size() - 1);
        sub_b.reserve(rows_a.size() - 1);
        for (size_t j = 0; j < rows_a.size(); ++j) {
            if (j == i) continue;
            Vec aj(d - 1);
            for (int t = 0; t < d - 1; ++t) aj[t] = dot(rows_a[j], basis[static_cast<size_t>(t)]);
            sub_a.push_back(aj);
            sub_b.push_back(rows_b[j] - dot(rows_a[j], x0));
        }
        vol += dist * hrep_volume(d - 1, std::move(sub_a), std::move(sub_b));
    }
    return vol / d;
}

inline std::vector<Vec> hrep_vertices(int d, const std::vector<Vec>& rows_a,
                                      const std::vector<double>& rows_b, double feas_tol) {
    const int m = static_cast<int>(rows_a.size());
    std::vector<Vec> verts;
    std::vector<int> combo;
    auto check = [&]() {
        Mat mat(d, d);
        Vec rhs(d);
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) mat.at(r, c) = rows_a[static_cast<size_t>(combo[static_cast<size_t>(r)])][c];
            rhs[r] = rows_b[static_cast<size_t>(combo[static_cast<size_t>(r)])];
        }
        Vec x;
        if (!solve_linear(mat, rhs, x, 1e-10)) return;
        for (int j = 0; j < m; ++j) {
            if (dot(rows_a[static_cast<size_t>(j)], x) > rows_b[static_cast<size_t>(j)] + feas_tol) return;
        }
        for (const Vec& v : verts) {
            if (distance(v, x) <= 1e-8 * (1.0 + norm(x))) return;
        }
        verts.push_back(x);
    };
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(combo.size()) == d) {
            check();
            return;
        }
        for (int i = start; i < m; ++i) {
            combo.push_back(i);
            self(self, i + 1);
            combo.pop_back();
        }
    };
    rec(rec, 0);
    return verts;
}

}  // namespace detail

// Per-pair cone data: the facet in direction `normal` (and its antipode),
// its (n-1)-volume, and the combined cone volume of the antipodal pair.
struct FacetCone {
    Vec normal;
    double height = 0.0;
    double facet_volume = 0.0;
    double pair_cone_volume = 0.0;  // both facets of the pair together
    bool redundant = false;
};

inline std::vector<FacetCone> cone_volume_facets(const PolytopeHBody& body) {
    const int n = body.dim;
    if (n > 4) throw DimensionTooLargeError("exact cone volumes support dimension <= 4");
    std::vector<FacetCone> out;
    out.reserve(body.normals.size());
    for (size_t i = 0; i < body.normals.size(); ++i) {
        const Vec& nu = body.normals[i];
        const double h = body.offsets[i];
        Vec x0 = nu * h;
        std::vector<Vec> basis = orthonormal_complement(nu);
        std::vector<Vec> rows_a;
        std::vector<double> rows_b;
        for (size_t j = 0; j < body.normals.size(); ++j) {
            for (double sign : {1.0, -1.0}) {
                if (j == i && sign > 0.0) continue;  // the facet's own hyperplane
                Vec a(n - 1);
                for (int t = 0; t < n - 1; ++t) {
                    a[t] = sign * dot(body.normals[j], basis[static_cast<size_t>(t)]);
                }
                rows_a.push_back(a);
                rows_b.push_back(body.offsets[j] - sign * dot(body.normals[j], x0));
            }
        }
        FacetCone fc;
        fc.normal = nu;
        fc.height = h;
        fc.facet_volume = n == 1 ? 1.0 : detail::hrep_volume(n - 1, std::move(rows_a), std::move(rows_b));
        fc.pair_cone_volume = 2.0 * fc.facet_volume * h / static_cast<double>(n);
        double body_scale = 1.0;
        for (double off : body.offsets) body_scale = std::max(body_scale, off);
        fc.redundant = fc.facet_volume <= 1e-10 * std::pow(body_scale, n - 1);
        out.push_back(std::move(fc));
    }
    return out;
}

// Exact cone-volume mass of the facet normals lying in the region. The full
// sphere gives vol(K); redundant halfspaces contribute zero and are flagged
// in the facet breakdown rather than treated as fatal.
inline double cone_volume_exact(const PolytopeHBody& body, const SphericalRegion& region) {
    std::vector<FacetCone> facets = cone_volume_facets(body);
    double mass = 0.0;
    for (const FacetCone& fc : facets) {
        bool in = true;
        if (region.kind == RegionKind::subspace_sphere) {
            in = region.subspace->contains_direction(fc.normal);
        } else if (region.kind == RegionKind::complement) {
            in = !region.subspace->contains_direction(fc.normal);
        }
        if (in) mass += fc.pair_cone_volume;
    }
    return mass;
}

inline double cone_volume_exact(const PolytopeHBody& body) {
    return cone_volume_exact(body, SphericalRegion::full());
}

}  // namespace dualcurv
