#pragma once

// Test-only oracles, kept independent of the library's solver paths: LP by
// exhaustive vertex enumeration, support values by dense sampling, normal
// cones by direct inequality checks over sampled region points.

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "gnevi/lp.hpp"
#include "gnevi/region.hpp"
#include "gnevi/rng.hpp"

namespace oracle {

using gnevi::Box;
using gnevi::Vec;

// Gaussian solve written separately from the library helper.
inline bool solve_square(std::vector<Vec> A, Vec b, Vec& out) {
    const std::size_t n = A.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
        if (std::fabs(A[piv][c]) < 1e-11) return false;
        std::swap(A[piv], A[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = A[r][c] / A[c][c];
            for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out[i] = b[i] / A[i][i];
    return true;
}

// All vertices of {rows, box} by subset enumeration, dim <= 3.
inline std::vector<Vec> enumerate_vertices(const std::vector<gnevi::lp::Constraint>& rows,
                                           const Box& box) {
    const int n = box.dim();
    std::vector<Vec> normals;
    Vec offsets;
    for (const auto& r : rows) {
        normals.push_back(r.a);
        offsets.push_back(r.b);
    }
    for (int i = 0; i < n; ++i) {
        normals.push_back(gnevi::unit_axis(n, i, 1.0));
        offsets.push_back(box.hi[i]);
        normals.push_back(gnevi::unit_axis(n, i, -1.0));
        offsets.push_back(-box.lo[i]);
    }
    const int m = static_cast<int>(normals.size());
    std::vector<Vec> verts;
    std::vector<int> pick(n);
    auto feasible = [&](const Vec& x) {
        for (int k = 0; k < m; ++k)
            if (gnevi::dot(normals[k], x) > offsets[k] + 1e-9) return false;
        return true;
    };
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == n) {
            std::vector<Vec> A(n);
            Vec b(n);
            for (int k = 0; k < n; ++k) {
                A[k] = normals[pick[k]];
                b[k] = offsets[pick[k]];
            }
            Vec x;
            if (!solve_square(A, b, x) || !feasible(x)) return;
            for (const auto& v : verts)
                if (gnevi::dist(v, x) < 1e-8) return;
            verts.push_back(x);
            return;
        }
        for (int i = start; i <= m - (n - depth); ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return verts;
}

// min c.x by evaluating every vertex; ties resolved lexicographically.
inline std::optional<std::pair<double, Vec>> lp_by_enumeration(
    const Vec& c, const std::vector<gnevi::lp::Constraint>& rows, const Box& box) {
    std::vector<Vec> verts = enumerate_vertices(rows, box);
    if (verts.empty()) return std::nullopt;
    double best = std::numeric_limits<double>::infinity();
    Vec arg;
    for (const auto& v : verts) {
        double val = gnevi::dot(c, v);
        if (val < best - 1e-12 ||
            (val < best + 1e-12 && (arg.empty() || gnevi::lex_less(v, arg)))) {
            best = val;
            arg = v;
        }
    }
    return std::make_pair(best, arg);
}

// sup <d, x> over sampled region points (closure sampling via a dense grid).
inline double support_by_sampling(const gnevi::ConvexRegion& region, const Vec& d,
                                  int samples_per_axis) {
    Box bb = gnevi::region_bbox(region);
    const int n = bb.dim();
    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> idx(n, 0);
    for (;;) {
        Vec p(n);
        for (int i = 0; i < n; ++i)
            p[i] = bb.lo[i] + (bb.hi[i] - bb.lo[i]) * idx[i] / double(samples_per_axis - 1);
        if (gnevi::region_contains(region, p, 1e-9)) best = std::max(best, gnevi::dot(d, p));
        int i = n - 1;
        while (i >= 0 && ++idx[i] == samples_per_axis) idx[i--] = 0;
        if (i < 0) break;
    }
    return best;
}

// Does s belong to the polar of (region - base)? Checked directly against
// sampled region points.
inline bool in_polar_by_sampling(const gnevi::ConvexRegion& region, const Vec& base, const Vec& s,
                                 int samples_per_axis, double tol = 1e-9) {
    Box bb = gnevi::region_bbox(region);
    const int n = bb.dim();
    std::vector<int> idx(n, 0);
    for (;;) {
        Vec p(n);
        for (int i = 0; i < n; ++i)
            p[i] = bb.lo[i] + (bb.hi[i] - bb.lo[i]) * idx[i] / double(samples_per_axis - 1);
        if (gnevi::region_contains(region, p, 1e-9) &&
            gnevi::dot(s, gnevi::sub(p, base)) > tol)
            return false;
        int i = n - 1;
        while (i >= 0 && ++idx[i] == samples_per_axis) idx[i--] = 0;
        if (i < 0) break;
    }
    return true;
}

}  // namespace oracle
