#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "dualcurv/errors.hpp"
#include "dualcurv/linalg.hpp"
#include "dualcurv/rng.hpp"

namespace dualcurv {

// Sampling / integration configuration shared by every estimator.
struct QuadratureSpec {
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    std::int64_t chunk = 1 << 16;   // deterministic work unit; results never depend on workers
    double rel_tol = 1e-6;          // target for the graded grid rules

    void validate() const {
        if (samples < 1) throw ValidationError("samples must be >= 1");
        if (chunk < 1) throw ValidationError("chunk must be >= 1");
        if (!(rel_tol > 0.0)) throw ValidationError("rel_tol must be positive");
    }
};

// Monte Carlo result: value, its standard error (sample standard deviation
// of the integrand divided by sqrt(samples)), and the provenance pair.
struct MeasureEstimate {
    double value = 0.0;
    double std_err = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
};

// Volume of the m-dimensional unit ball by the half-integer recursion;
// exact to machine precision for every m used here.
inline double unit_ball_volume(int m) {
    if (m < 0) throw ValidationError("negative dimension");
    if (m == 0) return 1.0;
    if (m == 1) return 2.0;
    return unit_ball_volume(m - 2) * 2.0 * 3.14159265358979323846264338327950288 / m;
}

inline double sphere_surface_area(int n) { return n * unit_ball_volume(n); }

// DUALCURV_THREADS caps the worker pool; results are identical either way.
inline int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("DUALCURV_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) hw = static_cast<int>(v > 64 ? 64 : v);
    }
    return hw;
}

inline constexpr int kMaxMoments = 6;

// Deterministic chunked reduction. The index space is split into fixed
// chunks; each chunk is summed serially and the chunk partials are combined
// in index order, so the result is bit-identical for any worker count.
//
// Kernel: copy-constructible, void operator()(std::int64_t index, double* out)
// writing `nmoments` values for that sample (copies may hold scratch space).
template <class Kernel>
inline std::array<double, kMaxMoments> accumulate_chunked(std::int64_t nsamples, std::int64_t chunk,
                                                          int nmoments, const Kernel& proto) {
    const std::int64_t nchunks = (nsamples + chunk - 1) / chunk;
    std::vector<std::array<double, kMaxMoments>> partials(static_cast<size_t>(nchunks));

    auto run_chunk = [&](Kernel& kernel, std::int64_t c) {
        std::array<double, kMaxMoments> acc{};
        double tmp[kMaxMoments] = {};
        const std::int64_t lo = c * chunk;
        const std::int64_t hi = std::min(nsamples, lo + chunk);
        for (std::int64_t i = lo; i < hi; ++i) {
            kernel(i, tmp);
            for (int j = 0; j < nmoments; ++j) acc[static_cast<size_t>(j)] += tmp[j];
        }
        partials[static_cast<size_t>(c)] = acc;
    };

    const int workers = static_cast<int>(std::min<std::int64_t>(worker_count(), nchunks));
    if (workers <= 1) {
        Kernel kernel(proto);
        for (std::int64_t c = 0; c < nchunks; ++c) run_chunk(kernel, c);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                Kernel kernel(proto);
                for (;;) {
                    std::int64_t c = next.fetch_add(1);
                    if (c >= nchunks) break;
                    run_chunk(kernel, c);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    std::array<double, kMaxMoments> total{};
    bool finite = true;
    for (std::int64_t c = 0; c < nchunks; ++c) {
        for (int j = 0; j < nmoments; ++j) {
            double v = partials[static_cast<size_t>(c)][static_cast<size_t>(j)];
            if (!std::isfinite(v)) finite = false;
            total[static_cast<size_t>(j)] += v;
        }
    }
    if (!finite) throw NonFiniteError("integrand produced a NaN or infinite sample");
    return total;
}

namespace detail {

inline MeasureEstimate estimate_from_sums(double sum, double sum_sq, std::int64_t n,
                                          std::uint64_t seed, double scale) {
    double mean = sum / static_cast<double>(n);
    double var = 0.0;
    if (n > 1) {
        var = (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
        if (var < 0.0) var = 0.0;
    }
    MeasureEstimate est;
    est.value = scale * mean;
    est.std_err = scale * std::sqrt(var / static_cast<double>(n));
    est.samples = n;
    est.seed = seed;
    return est;
}

}  // namespace detail

// Monte Carlo integral of f over S^{n-1} against surface measure.
template <class F>
inline MeasureEstimate integrate_sphere(F&& f, int n, const QuadratureSpec& spec) {
    spec.validate();
    if (n < 2) throw ValidationError("sphere dimension must be >= 2");
    using Fn = std::decay_t<F>;
    struct Kernel {
        const Fn* fn;
        int n;
        std::uint64_t seed;
        void operator()(std::int64_t i, double* m) const {
            SampleStream stream(seed, i);
            Vec u = sphere_direction_from(stream, n);
            double v = (*fn)(u);
            m[0] = v;
            m[1] = v * v;
        }
    };
    Fn fn(std::forward<F>(f));
    Kernel kernel{&fn, n, spec.seed};
    auto sums = accumulate_chunked(spec.samples, spec.chunk, 2, kernel);
    return detail::estimate_from_sums(sums[0], sums[1], spec.samples, spec.seed,
                                      sphere_surface_area(n));
}

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes, cached per order.

struct GaussLegendre {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

inline const GaussLegendre& gauss_legendre(int order) {
    static std::mutex mutex;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    GaussLegendre rule;
    rule.x.resize(static_cast<size_t>(order));
    rule.w.resize(static_cast<size_t>(order));
    const double pi = 3.14159265358979323846264338327950288;
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= order; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.x[static_cast<size_t>(i)] = -x;
        rule.w[static_cast<size_t>(i)] = w;
        rule.x[static_cast<size_t>(order - 1 - i)] = x;
        rule.w[static_cast<size_t>(order - 1 - i)] = w;
    }
    auto [pos, inserted] = cache.emplace(order, std::move(rule));
    (void)inserted;
    return pos->second;
}

namespace detail {

template <class F>
inline double gl_on_interval(F&& f, double a, double b, const GaussLegendre& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (size_t i = 0; i < rule.x.size(); ++i) s += rule.w[i] * f(mid + half * rule.x[i]);
    return s * half;
}

}  // namespace detail

// Integral of f over (0, 1] on a geometrically graded grid toward 0 (ratio
// 1/2, `depth` cells). The residual cell [0, 2^-depth] is summed as a
// geometric tail when the trailing cell integrals decay at a stable rate
// (exact for power-law integrands t^a, a > -1), and by direct quadrature
// otherwise.
template <class F>
inline double integrate_graded01(F&& f, int points, int depth) {
    if (depth < 4) throw ValidationError("graded rule needs depth >= 4");
    const GaussLegendre& rule = gauss_legendre(points);
    std::vector<double> cell(static_cast<size_t>(depth));
    for (int j = 0; j < depth; ++j) {
        double hi = std::ldexp(1.0, -j);
        double lo = std::ldexp(1.0, -(j + 1));
        cell[static_cast<size_t>(j)] = detail::gl_on_interval(f, lo, hi, rule);
    }
    double tail;
    double last = cell[static_cast<size_t>(depth - 1)];
    double prev = cell[static_cast<size_t>(depth - 2)];
    double prev2 = cell[static_cast<size_t>(depth - 3)];
    bool stable = std::isfinite(last) && std::isfinite(prev) && std::isfinite(prev2) &&
                  prev != 0.0 && prev2 != 0.0;
    if (stable) {
        double r1 = last / prev;
        double r2 = prev / prev2;
        stable = r1 > 1e-14 && r1 < 0.96 && std::abs(r1 - r2) <= 0.05 * r1 + 1e-12;
        if (stable) tail = last * r1 / (1.0 - r1);
    }
    if (!stable) tail = detail::gl_on_interval(f, 0.0, std::ldexp(1.0, -depth), rule);
    double total = tail;
    for (int j = depth - 1; j >= 0; --j) total += cell[static_cast<size_t>(j)];
    return total;
}

namespace detail {

struct GradedLevel {
    int points;
    int depth;
};

// Refinement ladder shared by the 1-D and 2-D graded rules. Depth is capped
// at 40 halvings per axis.
inline constexpr GradedLevel kGradedLadder[] = {{8, 16}, {12, 24}, {16, 32}, {24, 40}, {32, 40}};

}  // namespace detail

// ∫₀¹ f, refined until two ladder levels agree to rel_tol.
template <class F>
inline double integrate_01(F&& f, double rel_tol) {
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (const auto& level : detail::kGradedLadder) {
        double v = integrate_graded01(f, level.points, level.depth);
        if (std::isfinite(prev) && std::isfinite(v) &&
            std::abs(v - prev) <= rel_tol * std::max(std::abs(v), 1e-300)) {
            return v;
        }
        prev = v;
    }
    throw NoConvergenceError("1-D graded quadrature did not converge; integrand too singular");
}

// Tensorized graded Gauss-Legendre over the unit square; g may carry an
// integrable power singularity toward s = 0 and/or t = 0.
template <class G>
inline double integrate_unit_square(G&& g, const QuadratureSpec& spec) {
    spec.validate();
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (const auto& level : detail::kGradedLadder) {
        auto outer = [&](double s) {
            return integrate_graded01([&](double t) { return g(s, t); }, level.points, level.depth);
        };
        double v = integrate_graded01(outer, level.points, level.depth);
        if (std::isfinite(prev) && std::isfinite(v) &&
            std::abs(v - prev) <= spec.rel_tol * std::max(std::abs(v), 1e-300)) {
            return v;
        }
        prev = v;
    }
    throw NoConvergenceError("unit-square quadrature did not converge; integrand too singular");
}

}  // namespace dualcurv
