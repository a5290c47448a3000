#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include "dualcurv/errors.hpp"
#include "dualcurv/linalg.hpp"
#include "dualcurv/lp.hpp"

namespace dualcurv {

inline constexpr double kDefaultTieTol = 1e-9;
inline constexpr int kMaxHalfspacePairs = 64;

// ---------------------------------------------------------------------------
// Origin-symmetric convex bodies. Four representations share the same query
// surface: support function h(x), radial function rho(u) for unit u, the unit
// outer normals attained at the boundary point rho(u)u, and membership.

struct Ball {
    int dim;
    double radius;

    double support(const Vec& x) const { return radius * norm(x); }
    double radial(const Vec&) const { return radius; }
    bool contains(const Vec& x) const { return norm(x) <= radius * (1.0 + 1e-12); }
    double circumradius() const { return radius; }
};

// {x : x' Q x <= 1} with Q symmetric positive definite.
struct EllipsoidBody {
    int dim;
    Mat quad;
    Mat quad_inv;

    double support(const Vec& x) const { return std::sqrt(quad_form(quad_inv, x)); }
    double radial(const Vec& u) const { return 1.0 / std::sqrt(quad_form(quad, u)); }
    bool contains(const Vec& x) const { return quad_form(quad, x) <= 1.0 + 1e-12; }
    Vec boundary_normal(const Vec& u) const { return normalized(mat_vec(quad, u)); }
    // sqrt(trace Q^{-1}) >= sqrt(lambda_max(Q^{-1})), a safe box half-width.
    double circumradius() const {
        double tr = 0.0;
        for (int i = 0; i < dim; ++i) tr += quad_inv.at(i, i);
        return std::sqrt(tr);
    }
};

// Intersection of symmetric slabs {x : |<a_i, x>| <= b_i}. One representative
// per antipodal halfspace pair is stored with a unit normal, so K = -K holds
// by construction and cannot be broken by data.
struct PolytopeHBody {
    int dim;
    std::vector<Vec> normals;     // unit length, canonical sign
    std::vector<double> offsets;  // all positive: origin interior

    int pair_count() const { return static_cast<int>(normals.size()); }

    double radial(const Vec& u) const {
        // min_i b_i / |<a_i, u>| tracked by cross-multiplication; a single
        // division at the end keeps this loop cheap.
        double best_off = 1.0, best_den = 0.0;
        for (size_t i = 0; i < normals.size(); ++i) {
            double den = std::abs(dot(normals[i], u));
            if (offsets[i] * best_den < best_off * den) {
                best_off = offsets[i];
                best_den = den;
            }
        }
        return best_off / best_den;
    }

    double support(const Vec& x) const { return polytope_support_lp(normals, offsets, x); }

    bool contains(const Vec& x) const {
        for (size_t i = 0; i < normals.size(); ++i) {
            if (std::abs(dot(normals[i], x)) > offsets[i] * (1.0 + 1e-12)) return false;
        }
        return true;
    }
};

// (r B_k) x B_{n-k}, optionally dilated by `scale` so that dilation stays
// inside the representation.
struct CylinderBody {
    int dim;
    int k;
    double r;
    double scale = 1.0;

    // Euclidean norms of the two coordinate blocks.
    std::pair<double, double> block_norms(const Vec& x) const {
        double a = 0.0, b = 0.0;
        for (int i = 0; i < k; ++i) a += x[i] * x[i];
        for (int i = k; i < dim; ++i) b += x[i] * x[i];
        return {std::sqrt(a), std::sqrt(b)};
    }

    double radial(const Vec& u) const {
        auto [n1, n2] = block_norms(u);
        double rho = std::numeric_limits<double>::infinity();
        if (n1 > 0.0) rho = r / n1;
        if (n2 > 0.0) rho = std::min(rho, 1.0 / n2);
        return scale * rho;
    }

    double support(const Vec& x) const {
        auto [n1, n2] = block_norms(x);
        return scale * (r * n1 + n2);
    }

    bool contains(const Vec& x) const {
        auto [n1, n2] = block_norms(x);
        return n1 <= scale * r * (1.0 + 1e-12) && n2 <= scale * (1.0 + 1e-12);
    }

    double circumradius() const { return scale * std::hypot(r, 1.0); }

    // The lateral face (slab part) supports rho(u)u iff r|u2| <= |u1| up to
    // the tie band; the cap supports it on the reverse comparison.
    bool lateral_attains(const Vec& u, double tie_tol) const {
        auto [n1, n2] = block_norms(u);
        if (n1 <= 0.0) return false;
        if (n2 <= 0.0) return true;
        return r * n2 <= n1 * (1.0 + tie_tol);
    }
    bool cap_attains(const Vec& u, double tie_tol) const {
        auto [n1, n2] = block_norms(u);
        if (n2 <= 0.0) return false;
        if (n1 <= 0.0) return true;
        return n1 <= r * n2 * (1.0 + tie_tol);
    }

    Vec lateral_normal(const Vec& u) const {
        Vec v(dim);
        auto [n1, n2] = block_norms(u);
        (void)n2;
        for (int i = 0; i < k; ++i) v[i] = u[i] / n1;
        return v;
    }
    Vec cap_normal(const Vec& u) const {
        Vec v(dim);
        auto [n1, n2] = block_norms(u);
        (void)n1;
        for (int i = k; i < dim; ++i) v[i] = u[i] / n2;
        return v;
    }
};

class SymmetricBody {
 public:
    using Variant = std::variant<Ball, EllipsoidBody, PolytopeHBody, CylinderBody>;

    static SymmetricBody ball(double radius, int dim) {
        check_dim(dim);
        if (!(radius > 0.0)) throw ValidationError("ball radius must be positive");
        return SymmetricBody(Ball{dim, radius});
    }

    static SymmetricBody ellipsoid(const Mat& quad) {
        if (quad.rows != quad.cols) throw ValidationError("ellipsoid matrix must be square");
        check_dim(quad.rows);
        Mat sym = quad;
        for (int i = 0; i < quad.rows; ++i) {
            for (int j = 0; j < i; ++j) {
                double avg = 0.5 * (quad.at(i, j) + quad.at(j, i));
                if (std::abs(quad.at(i, j) - quad.at(j, i)) > 1e-9 * (1.0 + std::abs(avg))) {
                    throw ValidationError("ellipsoid matrix must be symmetric");
                }
                sym.at(i, j) = sym.at(j, i) = avg;
            }
        }
        EllipsoidBody body{quad.rows, sym, inverse_spd(sym)};
        return SymmetricBody(std::move(body));
    }

    // Each (normal, offset) pair also represents its negation. Normals are
    // unit-normalized, sign-canonicalized and deduped; the set must span R^n
    // or the body would be unbounded.
    static SymmetricBody polytope_h(const std::vector<Vec>& normals,
                                    const std::vector<double>& offsets) {
        if (normals.empty()) throw ValidationError("polytope needs at least one halfspace pair");
        if (normals.size() != offsets.size()) {
            throw ValidationError("normals and offsets must have equal length");
        }
        const int dim = normals.front().size();
        check_dim(dim);
        PolytopeHBody body;
        body.dim = dim;
        for (size_t i = 0; i < normals.size(); ++i) {
            if (normals[i].size() != dim) throw ValidationError("mixed normal dimensions");
            double len = norm(normals[i]);
            if (len < 1e-300) throw ValidationError("zero normal vector");
            double off = offsets[i] / len;
            if (!(off > 0.0)) throw ValidationError("origin not interior: offsets must be positive");
            Vec a = normals[i] * (1.0 / len);
            for (int d = 0; d < dim; ++d) {
                if (std::abs(a[d]) > 1e-14) {
                    if (a[d] < 0.0) a = -a;
                    break;
                }
            }
            bool merged = false;
            for (size_t j = 0; j < body.normals.size(); ++j) {
                if (distance(body.normals[j], a) <= 1e-12) {
                    body.offsets[j] = std::min(body.offsets[j], off);
                    merged = true;
                    break;
                }
            }
            if (!merged) {
                body.normals.push_back(a);
                body.offsets.push_back(off);
            }
        }
        if (body.pair_count() > kMaxHalfspacePairs) {
            throw ValidationError("too many halfspace pairs (max " +
                                  std::to_string(kMaxHalfspacePairs) + ")");
        }
        if (rank_of(body.normals) != dim) {
            throw ValidationError("halfspace normals do not span R^n: polytope unbounded");
        }
        return SymmetricBody(std::move(body));
    }

    static SymmetricBody cylinder(double r, int k, int dim) {
        check_dim(dim);
        if (!(r > 0.0)) throw ValidationError("cylinder radius must be positive");
        if (k < 1 || k > dim - 1) throw ValidationError("cylinder block dimension k must satisfy 1 <= k <= n-1");
        return SymmetricBody(CylinderBody{dim, k, r, 1.0});
    }

    int dim() const {
        return std::visit([](const auto& b) { return b.dim; }, v_);
    }

    const Variant& variant() const { return v_; }

    double support(const Vec& x) const {
        require_dim(x.size());
        return std::visit([&](const auto& b) { return b.support(x); }, v_);
    }

    double radial(const Vec& u) const {
        require_dim(u.size());
        return std::visit([&](const auto& b) { return b.radial(u); }, v_);
    }

    bool contains(const Vec& x) const {
        require_dim(x.size());
        return std::visit([&](const auto& b) { return b.contains(x); }, v_);
    }

    // Unit outer normals of the supporting hyperplanes at rho(u)u. Facets are
    // selected through a relative tie band: the exact tie set has measure
    // zero but floating point needs a width.
    std::vector<Vec> attaining_normals(const Vec& u, double tie_tol = kDefaultTieTol) const;

    // Dilation by c > 0.
    SymmetricBody scaled(double c) const {
        if (!(c > 0.0)) throw ValidationError("scale factor must be positive");
        SymmetricBody out = *this;
        std::visit(
            [&](auto& b) {
                using T = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<T, Ball>) {
                    b.radius *= c;
                } else if constexpr (std::is_same_v<T, EllipsoidBody>) {
                    for (int i = 0; i < b.dim; ++i) {
                        for (int j = 0; j < b.dim; ++j) {
                            b.quad.at(i, j) /= c * c;
                            b.quad_inv.at(i, j) *= c * c;
                        }
                    }
                } else if constexpr (std::is_same_v<T, PolytopeHBody>) {
                    for (double& off : b.offsets) off *= c;
                } else {
                    b.scale *= c;
                }
            },
            out.v_);
        return out;
    }

    // Upper bound on max_u rho(u); exact except for ellipsoids.
    double circumradius_bound() const;

 private:
    explicit SymmetricBody(Variant v) : v_(std::move(v)) {}

    void require_dim(int n) const {
        if (n != dim()) throw ValidationError("vector dimension does not match body dimension");
    }

    Variant v_;
};

namespace detail {

// Vertices of a symmetric H-polytope by active-set enumeration over signed
// halfspace choices. Exact and exhaustive, hence the dimension cap.
inline std::vector<Vec> polytope_vertices(const PolytopeHBody& body) {
    const int n = body.dim;
    if (n > 4) throw DimensionTooLargeError("vertex enumeration supports dimension <= 4");
    const int p = body.pair_count();
    if (p < n) return {};
    std::vector<Vec> verts;
    std::vector<int> idx(static_cast<size_t>(n));
    double max_off = 0.0;
    for (double off : body.offsets) max_off = std::max(max_off, off);

    auto try_combo = [&]() {
        const int signs = 1 << n;
        for (int mask = 0; mask < signs; ++mask) {
            Mat m(n, n);
            Vec rhs(n);
            for (int row = 0; row < n; ++row) {
                double sign = (mask >> row) & 1 ? -1.0 : 1.0;
                for (int col = 0; col < n; ++col) m.at(row, col) = sign * body.normals[static_cast<size_t>(idx[static_cast<size_t>(row)])][col];
                rhs[row] = body.offsets[static_cast<size_t>(idx[static_cast<size_t>(row)])];
            }
            Vec x;
            if (!solve_linear(m, rhs, x, 1e-10)) continue;
            bool feasible = true;
            for (int i = 0; i < p && feasible; ++i) {
                if (std::abs(dot(body.normals[static_cast<size_t>(i)], x)) >
                    body.offsets[static_cast<size_t>(i)] * (1.0 + 1e-9) + 1e-12 * max_off) {
                    feasible = false;
                }
            }
            if (!feasible) continue;
            bool dup = false;
            for (const Vec& v : verts) {
                if (distance(v, x) <= 1e-8 * (1.0 + norm(x))) {
                    dup = true;
                    break;
                }
            }
            if (!dup) verts.push_back(x);
        }
    };

    // All size-n subsets of pairs.
    std::vector<int> stack;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(stack.size()) == n) {
            for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = stack[static_cast<size_t>(i)];
            try_combo();
            return;
        }
        for (int i = start; i < p; ++i) {
            stack.push_back(i);
            self(self, i + 1);
            stack.pop_back();
        }
    };
    rec(rec, 0);
    return verts;
}

}  // namespace detail

inline std::vector<Vec> SymmetricBody::attaining_normals(const Vec& u, double tie_tol) const {
    require_dim(u.size());
    if (!(tie_tol > 0.0)) throw ValidationError("tie_tol must be positive");
    return std::visit(
        [&](const auto& b) -> std::vector<Vec> {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Ball>) {
                return {normalized(u)};
            } else if constexpr (std::is_same_v<T, EllipsoidBody>) {
                return {b.boundary_normal(u)};
            } else if constexpr (std::is_same_v<T, PolytopeHBody>) {
                double rho = b.radial(u);
                double thr = rho * (1.0 + tie_tol);
                std::vector<Vec> out;
                for (size_t i = 0; i < b.normals.size(); ++i) {
                    double den = dot(b.normals[i], u);
                    if (b.offsets[i] <= std::abs(den) * thr) {
                        out.push_back(den >= 0.0 ? b.normals[i] : -b.normals[i]);
                    }
                }
                return out;
            } else {
                std::vector<Vec> out;
                if (b.lateral_attains(u, tie_tol)) out.push_back(b.lateral_normal(u));
                if (b.cap_attains(u, tie_tol)) out.push_back(b.cap_normal(u));
                return out;
            }
        },
        v_);
}

inline double SymmetricBody::circumradius_bound() const {
    return std::visit(
        [&](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, PolytopeHBody>) {
                double best = 0.0;
                for (const Vec& v : detail::polytope_vertices(b)) best = std::max(best, norm(v));
                return best;
            } else {
                return b.circumradius();
            }
        },
        v_);
}

}  // namespace dualcurv
