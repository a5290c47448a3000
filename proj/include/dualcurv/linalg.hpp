#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "dualcurv/errors.hpp"

namespace dualcurv {

// Everything in this library is desk scale; fixed small capacities keep the
// hot loops allocation-free.
inline constexpr int kMaxDim = 8;

inline void check_dim(int n) {
    if (n < 1 || n > kMaxDim) {
        throw ValidationError("dimension must be between 1 and " + std::to_string(kMaxDim) +
                              ", got " + std::to_string(n));
    }
}

// Dense vector with inline storage.
struct Vec {
    std::array<double, kMaxDim> c{};
    int n = 0;

    Vec() = default;
    explicit Vec(int dim) : n(dim) { check_dim(dim); }
    Vec(std::initializer_list<double> xs) : n(static_cast<int>(xs.size())) {
        check_dim(n);
        int i = 0;
        for (double x : xs) c[i++] = x;
    }

    static Vec from(const std::vector<double>& xs) {
        Vec v(static_cast<int>(xs.size()));
        for (int i = 0; i < v.n; ++i) v.c[i] = xs[i];
        return v;
    }

    int size() const { return n; }
    double& operator[](int i) { return c[static_cast<size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<size_t>(i)]; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < n; ++i) c[i] += o.c[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < n; ++i) c[i] -= o.c[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (int i = 0; i < n; ++i) c[i] *= s;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(Vec a, double s) { return a *= s; }
    friend Vec operator*(double s, Vec a) { return a *= s; }
    friend Vec operator-(Vec a) {
        for (int i = 0; i < a.n; ++i) a.c[i] = -a.c[i];
        return a;
    }
};

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (int i = 0; i < a.n; ++i) s += a.c[i] * b.c[i];
    return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline double distance(const Vec& a, const Vec& b) { return norm(a - b); }

inline Vec normalized(const Vec& a) {
    double nr = norm(a);
    if (nr < 1e-300) throw ValidationError("cannot normalize a zero vector");
    return a * (1.0 / nr);
}

inline Vec unit_axis(int n, int axis) {
    Vec e(n);
    e[axis] = 1.0;
    return e;
}

inline std::ostream& operator<<(std::ostream& os, const Vec& v) {
    os << '(';
    for (int i = 0; i < v.n; ++i) os << (i ? ", " : "") << v[i];
    return os << ')';
}

// Dense matrix with inline storage, row major.
struct Mat {
    std::array<double, kMaxDim * kMaxDim> a{};
    int rows = 0, cols = 0;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c) {
        check_dim(r);
        check_dim(c);
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    double& at(int i, int j) { return a[static_cast<size_t>(i * kMaxDim + j)]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i * kMaxDim + j)]; }
};

inline Vec mat_vec(const Mat& m, const Vec& x) {
    Vec y(m.rows);
    for (int i = 0; i < m.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += m.at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

inline double quad_form(const Mat& m, const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i) {
        double row = 0.0;
        for (int j = 0; j < m.cols; ++j) row += m.at(i, j) * x[j];
        s += x[i] * row;
    }
    return s;
}

// Gaussian elimination with partial pivoting. Returns false when the system
// is singular at the given tolerance.
inline bool solve_linear(Mat m, Vec rhs, Vec& out, double piv_tol = 1e-12) {
    const int n = m.rows;
    std::array<int, kMaxDim> perm{};
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(m.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            double v = std::abs(m.at(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best <= piv_tol) return false;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(col, j), m.at(piv, j));
            std::swap(rhs[col], rhs[piv]);
        }
        for (int r = col + 1; r < n; ++r) {
            double f = m.at(r, col) / m.at(col, col);
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
            rhs[r] -= f * rhs[col];
        }
    }
    out = Vec(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = rhs[i];
        for (int j = i + 1; j < n; ++j) s -= m.at(i, j) * out[j];
        out[i] = s / m.at(i, i);
    }
    return true;
}

// Cholesky factor of a symmetric positive definite matrix; false if not SPD.
inline bool cholesky(const Mat& m, Mat& lower) {
    const int n = m.rows;
    lower = Mat(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m.at(i, j);
            for (int k = 0; k < j; ++k) s -= lower.at(i, k) * lower.at(j, k);
            if (i == j) {
                if (s <= 0.0) return false;
                lower.at(i, i) = std::sqrt(s);
            } else {
                lower.at(i, j) = s / lower.at(j, j);
            }
        }
    }
    return true;
}

// Inverse of an SPD matrix via its Cholesky factor.
inline Mat inverse_spd(const Mat& m) {
    Mat lower;
    if (!cholesky(m, lower)) throw ValidationError("matrix is not positive definite");
    const int n = m.rows;
    Mat inv(n, n);
    for (int col = 0; col < n; ++col) {
        Vec y(n);
        for (int i = 0; i < n; ++i) {
            double s = (i == col) ? 1.0 : 0.0;
            for (int k = 0; k < i; ++k) s -= lower.at(i, k) * y[k];
            y[i] = s / lower.at(i, i);
        }
        Vec x(n);
        for (int i = n - 1; i >= 0; --i) {
            double s = y[i];
            for (int k = i + 1; k < n; ++k) s -= lower.at(k, i) * x[k];
            x[i] = s / lower.at(i, i);
        }
        for (int i = 0; i < n; ++i) inv.at(i, col) = x[i];
    }
    return inv;
}

// Modified Gram-Schmidt. Vectors whose residual falls below rel_tol times
// their original norm are dependent; `strict` turns that into an error,
// otherwise they are dropped.
inline std::vector<Vec> gram_schmidt(const std::vector<Vec>& vectors, bool strict,
                                     double rel_tol = 1e-10) {
    std::vector<Vec> basis;
    for (const Vec& v : vectors) {
        double scale = norm(v);
        if (scale < 1e-300) {
            if (strict) throw RankDeficientError("zero vector in basis candidate set");
            continue;
        }
        Vec w = v;
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vec& e : basis) w -= dot(w, e) * e;
        }
        double res = norm(w);
        if (res <= rel_tol * scale) {
            if (strict) throw RankDeficientError("linearly dependent vectors");
            continue;
        }
        basis.push_back(w * (1.0 / res));
    }
    return basis;
}

inline int rank_of(const std::vector<Vec>& vectors, double rel_tol = 1e-10) {
    return static_cast<int>(gram_schmidt(vectors, /*strict=*/false, rel_tol).size());
}

// Orthonormal basis of the hyperplane orthogonal to a unit vector.
inline std::vector<Vec> orthonormal_complement(const Vec& unit) {
    const int n = unit.size();
    std::vector<Vec> cand;
    cand.reserve(static_cast<size_t>(n));
    cand.push_back(unit);
    for (int i = 0; i < n; ++i) cand.push_back(unit_axis(n, i));
    std::vector<Vec> full = gram_schmidt(cand, /*strict=*/false);
    return {full.begin() + 1, full.end()};
}

// Frobenius distance between the orthogonal projectors of two spans; zero
// exactly when the spans coincide.
inline double projector_distance(const std::vector<Vec>& basis_a, const std::vector<Vec>& basis_b) {
    if (basis_a.empty() && basis_b.empty()) return 0.0;
    const int n = basis_a.empty() ? basis_b.front().size() : basis_a.front().size();
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double pa = 0.0, pb = 0.0;
            for (const Vec& e : basis_a) pa += e[i] * e[j];
            for (const Vec& e : basis_b) pb += e[i] * e[j];
            s += (pa - pb) * (pa - pb);
        }
    }
    return std::sqrt(s);
}

}  // namespace dualcurv
