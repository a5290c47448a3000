#pragma once

#include <cmath>
#include <cstdint>

#include "dualcurv/linalg.hpp"

namespace dualcurv {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Child seed for grid points, trials, and sub-runs. One avalanche round keeps
// children decorrelated from the master and from each other.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
    std::uint64_t h = master * 0x8CB92BA72F3D8DD7ull + (salt + 1) * 0xD1B54A32D192ED03ull;
    h ^= h >> 33;
    h *= 0xFF51AFD7ED558CCDull;
    h ^= h >> 33;
    h *= 0xC4CEB9FE1A85EC53ull;
    h ^= h >> 33;
    return h;
}

// Counter-based stream: (seed, index) owns an independent substream, so
// sample i is reproducible no matter which worker evaluates it or in what
// order. This is the whole reproducibility contract of the Monte Carlo layer.
class SampleStream {
 public:
    SampleStream(std::uint64_t seed, std::int64_t index)
        : state_(derive_seed(seed, static_cast<std::uint64_t>(index))) {}

    // Uniform in [0, 1).
    double u01() { return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log argument.
    double u01_positive() {
        return static_cast<double>((splitmix64(state_) >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller, pairwise cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = u01_positive();
        double u2 = u01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

 private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Uniform direction on S^{n-1} drawn from the stream (normalized Gaussian
// vector; the measure-zero event of a vanishing norm is resampled).
inline Vec sphere_direction_from(SampleStream& stream, int n) {
    Vec g(n);
    for (;;) {
        for (int i = 0; i < n; ++i) g[i] = stream.gaussian();
        double nr = norm(g);
        if (nr > 1e-100) return g * (1.0 / nr);
    }
}

inline Vec sphere_direction(int n, std::uint64_t seed, std::int64_t index) {
    SampleStream stream(seed, index);
    return sphere_direction_from(stream, n);
}

// Uniform point in the axis-aligned box [lo, hi].
inline Vec box_point_from(SampleStream& stream, const Vec& lo, const Vec& hi) {
    Vec x(lo.size());
    for (int i = 0; i < lo.size(); ++i) x[i] = lo[i] + (hi[i] - lo[i]) * stream.u01();
    return x;
}

}  // namespace dualcurv
