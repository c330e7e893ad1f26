#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gnevi {

using Vec = std::vector<double>;

// Axis-aligned box [lo, hi], the carrier for strategy sets and domains.
struct Box {
    Vec lo;
    Vec hi;

    Box() = default;
    Box(Vec lo_, Vec hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo.size() != hi.size())
            throw std::invalid_argument("Box: bound dimensions differ");
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (lo[i] > hi[i])
                throw std::invalid_argument("Box: lo > hi at axis " + std::to_string(i));
    }

    int dim() const { return static_cast<int>(lo.size()); }

    bool contains(const Vec& p, double tol = 0.0) const {
        if (p.size() != lo.size()) return false;
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (p[i] < lo[i] - tol || p[i] > hi[i] + tol) return false;
        return true;
    }

    Vec clamp(Vec p) const {
        for (std::size_t i = 0; i < p.size(); ++i)
            p[i] = std::min(std::max(p[i], lo[i]), hi[i]);
        return p;
    }

    Vec center() const {
        Vec c(lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
        return c;
    }

    double diameter() const {
        double s = 0;
        for (std::size_t i = 0; i < lo.size(); ++i) s += (hi[i] - lo[i]) * (hi[i] - lo[i]);
        return std::sqrt(s);
    }
};

inline double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec scale(const Vec& a, double s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

// a + s * b
inline Vec axpy(const Vec& a, double s, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
}

inline double dist(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

inline Vec normalized(const Vec& a) {
    double n = norm(a);
    if (n == 0) throw std::invalid_argument("normalized: zero vector");
    return scale(a, 1.0 / n);
}

inline bool all_finite(const Vec& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

inline Vec unit_axis(int dim, int axis, double sign = 1.0) {
    Vec e(dim, 0.0);
    e[axis] = sign;
    return e;
}

// Lexicographic comparison with tolerance; used for deterministic ordering of
// solution points.
inline bool lex_less(const Vec& a, const Vec& b, double tol = 0.0) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i] - tol) return true;
        if (a[i] > b[i] + tol) return false;
    }
    return a.size() < b.size();
}

// Solves the dense system M x = rhs by Gaussian elimination with partial
// pivoting. Returns false when M is singular at the given tolerance.
inline bool solve_dense(std::vector<Vec> M, Vec rhs, Vec& out, double tol = 1e-12) {
    const std::size_t n = M.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
        if (std::fabs(M[piv][col]) < tol) return false;
        std::swap(M[piv], M[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = M[r][col] / M[col][col];
            if (f == 0) continue;
            for (std::size_t c = col; c < n; ++c) M[r][c] -= f * M[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out[i] = rhs[i] / M[i][i];
    return true;
}

}  // namespace gnevi
