#pragma once

#include <cmath>
#include <string_view>
#include <vector>

#include "dualcurv/measures.hpp"

namespace dualcurv {

enum class Verdict { strict_pass, equality_candidate, violation };

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::strict_pass: return "StrictPass";
        case Verdict::equality_candidate: return "EqualityCandidate";
        case Verdict::violation: return "Violation";
    }
    return "?";
}

namespace detail {

inline Verdict classify_verdict(double ratio, double std_err, double bound) {
    if (ratio - 3.0 * std_err > bound) return Verdict::violation;
    if (std::abs(ratio - bound) <= 3.0 * std_err) return Verdict::equality_candidate;
    return Verdict::strict_pass;
}

}  // namespace detail

// Concentration ratio of a subspace sphere against the whole sphere, with
// the bound min{dim L / q, 1} and a three-sigma verdict.
struct RatioReport {
    double ratio = 0.0;
    double std_err = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    double q = 0.0;
    int dim_L = 0;
    Verdict verdict = Verdict::strict_pass;
    MeasureEstimate numerator;
    MeasureEstimate denominator;
    bool scc_confirmed = false;  // set by the sweep for equality candidates at q = n
};

// Numerator and denominator are accumulated from the same sample stream, so
// their shared fluctuation cancels out of the ratio; the standard error uses
// the delta method on the joint moments.
inline RatioReport concentration_ratio(const SymmetricBody& body, double q, const Subspace& L,
                                       const QuadratureSpec& spec,
                                       const SymmetricBody* gauge = nullptr,
                                       double tie_tol = kDefaultTieTol) {
    spec.validate();
    if (!(q > 0.0)) throw ValidationError("concentration ratio needs q > 0");
    if (L.ambient() != body.dim()) throw ValidationError("subspace/body dimension mismatch");
    if (gauge && gauge->dim() != body.dim()) throw ValidationError("gauge dimension mismatch");
    const int n = body.dim();
    SphericalRegion region = SphericalRegion::sphere_in(L);

    auto sums = std::visit(
        [&](const auto& b) {
            auto eval = detail::make_region_eval(b, region, tie_tol);
            using Eval = decltype(eval);
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
                    double w = std::pow(rho, q);
                    if (gauge) w *= std::pow(gauge->radial(u), static_cast<double>(n) - q);
                    double x = member ? w : 0.0;
                    m[0] = x;
                    m[1] = w;
                    m[2] = x * x;
                    m[3] = w * w;
                    m[4] = x * w;
                }
            };
            Kernel kernel{&eval, gauge, n, q, spec.seed};
            return accumulate_chunked(spec.samples, spec.chunk, 5, kernel);
        },
        body.variant());

    const double count = static_cast<double>(spec.samples);
    const double mean_x = sums[0] / count;
    const double mean_w = sums[1] / count;
    if (!(mean_w > 0.0)) {
        throw DegenerateDenominatorError("total dual curvature measure estimate is not positive");
    }
    const double ratio = mean_x / mean_w;

    double var_x = 0.0, var_w = 0.0, cov = 0.0;
    if (spec.samples > 1) {
        const double denom = count - 1.0;
        var_x = std::max(0.0, (sums[2] - count * mean_x * mean_x) / denom);
        var_w = std::max(0.0, (sums[3] - count * mean_w * mean_w) / denom);
        cov = (sums[4] - count * mean_x * mean_w) / denom;
    }
    double var_ratio =
        (var_x - 2.0 * ratio * cov + ratio * ratio * var_w) / (count * mean_w * mean_w);
    double std_err = std::sqrt(std::max(0.0, var_ratio));

    const double scale = sphere_surface_area(n) / static_cast<double>(n);
    RatioReport report;
    report.ratio = ratio;
    report.std_err = std_err;
    report.bound = std::min(static_cast<double>(L.dim()) / q, 1.0);
    report.margin = report.bound - ratio;
    report.q = q;
    report.dim_L = L.dim();
    report.verdict = detail::classify_verdict(ratio, std_err, report.bound);
    report.numerator =
        detail::estimate_from_sums(sums[0], sums[2], spec.samples, spec.seed, scale);
    report.denominator =
        detail::estimate_from_sums(sums[1], sums[3], spec.samples, spec.seed, scale);
    return report;
}

// ---------------------------------------------------------------------------
// Subspace concentration condition for H-polytopes, checked exactly against
// the cone-volume oracle. Cone-volume mass lives only on facet normals, so
// spans of facet-normal subsets are the only subspaces that can carry mass;
// enumerating them is finite and complete.

struct SccCandidate {
    std::vector<Vec> basis;
    int dim = 0;
    double mass = 0.0;
    double ratio = 0.0;
    double bound = 0.0;
    bool equality = false;
    bool violation = false;
    bool complement_ok = false;  // meaningful when equality holds
};

struct SccReport {
    bool holds = false;
    double total = 0.0;
    std::vector<SccCandidate> candidates;
};

inline SccReport check_scc_polytope(const PolytopeHBody& body) {
    const int n = body.dim;
    if (n > 4) throw DimensionTooLargeError("subspace concentration check supports dimension <= 4");
    std::vector<FacetCone> facets = cone_volume_facets(body);
    double total = 0.0;
    for (const FacetCone& fc : facets) total += fc.pair_cone_volume;

    const int p = static_cast<int>(facets.size());
    std::vector<std::vector<Vec>> seen_spans;
    SccReport report;
    report.total = total;
    report.holds = true;

    std::vector<int> subset;
    auto consider = [&]() {
        std::vector<Vec> gens;
        gens.reserve(subset.size());
        for (int i : subset) gens.push_back(facets[static_cast<size_t>(i)].normal);
        std::vector<Vec> basis = gram_schmidt(gens, /*strict=*/false);
        const int d = static_cast<int>(basis.size());
        if (d < 1 || d >= n) return;
        for (const auto& span : seen_spans) {
            if (static_cast<int>(span.size()) == d && projector_distance(span, basis) <= 1e-8) {
                return;
            }
        }
        seen_spans.push_back(basis);

        Subspace L(basis, n);
        SccCandidate cand;
        cand.basis = L.basis();
        cand.dim = d;
        cand.bound = static_cast<double>(d) / n;
        std::vector<Vec> complement_gens;
        for (const FacetCone& fc : facets) {
            if (L.contains_direction(fc.normal)) {
                cand.mass += fc.pair_cone_volume;
            } else {
                complement_gens.push_back(fc.normal);
            }
        }
        cand.ratio = cand.mass / total;
        cand.violation = cand.ratio > cand.bound + 1e-9;
        cand.equality = !cand.violation && std::abs(cand.ratio - cand.bound) <= 1e-9;
        if (cand.equality) {
            // Complementary structure: the remaining normals must span a
            // complement of L and carry exactly the remaining mass.
            std::vector<Vec> comp_basis = gram_schmidt(complement_gens, /*strict=*/false);
            Subspace Lc(comp_basis, n);
            double comp_mass = 0.0;
            for (const FacetCone& fc : facets) {
                if (Lc.contains_direction(fc.normal)) comp_mass += fc.pair_cone_volume;
            }
            std::vector<Vec> joint = cand.basis;
            joint.insert(joint.end(), comp_basis.begin(), comp_basis.end());
            cand.complement_ok = static_cast<int>(comp_basis.size()) + d == n &&
                                 rank_of(joint) == n &&
                                 std::abs(cand.mass + comp_mass - total) <= 1e-9 * total;
            if (!cand.complement_ok) report.holds = false;
        }
        if (cand.violation) report.holds = false;
        report.candidates.push_back(std::move(cand));
    };

    auto rec = [&](auto&& self, int start) -> void {
        if (!subset.empty() && static_cast<int>(subset.size()) <= n - 1) consider();
        if (static_cast<int>(subset.size()) == n - 1) return;
        for (int i = start; i < p; ++i) {
            subset.push_back(i);
            self(self, i + 1);
            subset.pop_back();
        }
    };
    rec(rec, 0);
    return report;
}

// Grid sweep of the concentration bound: every (body, q, L) point gets its
// own derived seed, reports carry verdicts, and every equality candidate at
// q = n is cross-checked against the exact cone-volume oracle.
inline std::vector<RatioReport> check_theorem_bound(const std::vector<SymmetricBody>& bodies,
                                                    const std::vector<double>& qs,
                                                    const std::vector<Subspace>& subspaces,
                                                    const QuadratureSpec& spec) {
    std::vector<RatioReport> reports;
    reports.reserve(bodies.size() * qs.size() * subspaces.size());
    std::uint64_t grid_index = 0;
    for (const SymmetricBody& body : bodies) {
        for (double q : qs) {
            for (const Subspace& L : subspaces) {
                QuadratureSpec point = spec;
                point.seed = derive_seed(spec.seed, grid_index++);
                RatioReport report = concentration_ratio(body, q, L, point);
                if (report.verdict == Verdict::equality_candidate &&
                    std::abs(q - body.dim()) <= 1e-12) {
                    if (const auto* poly = std::get_if<PolytopeHBody>(&body.variant());
                        poly && body.dim() <= 4) {
                        SccReport scc = check_scc_polytope(*poly);
                        for (const SccCandidate& cand : scc.candidates) {
                            if (cand.equality && cand.complement_ok && cand.dim == L.dim() &&
                                projector_distance(cand.basis, L.basis()) <= 1e-6) {
                                report.scc_confirmed = true;
                                break;
                            }
                        }
                    }
                }
                reports.push_back(std::move(report));
            }
        }
    }
    return reports;
}

}  // namespace dualcurv
