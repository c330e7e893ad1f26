#include "gnevi/hull.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gnevi/lp.hpp"

namespace gnevi::hull {

namespace {

constexpr double kTol = 1e-11;

// Min ||sum alpha_i p_i|| over the affine hull (sum alpha = 1, alpha free),
// via the bordered Gram system. A small ridge keeps nearly dependent corrals
// solvable; Wolfe's outer loop corrects any drift.
bool affine_minimizer(const std::vector<Vec>& pts, const std::vector<std::size_t>& corral,
                      Vec& alpha) {
    const std::size_t k = corral.size();
    std::vector<Vec> M(k + 1, Vec(k + 1, 0.0));
    Vec rhs(k + 1, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) M[i][j] = dot(pts[corral[i]], pts[corral[j]]);
        M[i][i] += 1e-13;
        M[i][k] = 1.0;
        M[k][i] = 1.0;
    }
    rhs[k] = 1.0;
    Vec sol;
    if (!solve_dense(M, rhs, sol, 1e-14)) return false;
    alpha.assign(sol.begin(), sol.begin() + k);
    return true;
}

}  // namespace

MinNormResult min_norm_point(const std::vector<Vec>& points) {
    if (points.empty()) throw std::invalid_argument("min_norm_point: no points");
    const std::size_t n = points.size();

    std::size_t start = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (norm2(points[i]) < norm2(points[start])) start = i;

    std::vector<std::size_t> corral{start};
    Vec lambda{1.0};
    Vec x = points[start];

    const std::size_t max_iter = 16 * n + 64;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        // optimality: <x, p_j> >= <x, x> for all j up to tolerance
        std::size_t best = n;
        double best_val = norm2(x) - kTol * std::max(1.0, norm2(x));
        for (std::size_t j = 0; j < n; ++j) {
            double v = dot(x, points[j]);
            if (v < best_val - kTol) {
                best_val = v;
                best = j;
            }
        }
        if (best == n) break;
        if (std::find(corral.begin(), corral.end(), best) != corral.end()) break;
        corral.push_back(best);
        lambda.push_back(0.0);

        for (std::size_t minor = 0; minor < max_iter; ++minor) {
            Vec alpha;
            if (!affine_minimizer(points, corral, alpha)) {
                corral.pop_back();
                lambda.pop_back();
                break;
            }
            bool interior = true;
            for (double a : alpha)
                if (a < 1e-12) interior = false;
            if (interior) {
                lambda = alpha;
                break;
            }
            // step toward alpha until the first coefficient hits zero
            double theta = 1.0;
            for (std::size_t i = 0; i < corral.size(); ++i)
                if (alpha[i] < 1e-12 && lambda[i] > alpha[i])
                    theta = std::min(theta, lambda[i] / (lambda[i] - alpha[i]));
            std::vector<std::size_t> next_corral;
            Vec next_lambda;
            for (std::size_t i = 0; i < corral.size(); ++i) {
                double v = (1.0 - theta) * lambda[i] + theta * alpha[i];
                if (v > 1e-12) {
                    next_corral.push_back(corral[i]);
                    next_lambda.push_back(v);
                }
            }
            if (next_corral.empty()) {
                next_corral.push_back(corral[0]);
                next_lambda.push_back(1.0);
            }
            corral = std::move(next_corral);
            lambda = std::move(next_lambda);
        }
        double s = 0;
        for (double v : lambda) s += v;
        for (double& v : lambda) v /= s;
        x.assign(points[0].size(), 0.0);
        for (std::size_t i = 0; i < corral.size(); ++i) x = axpy(x, lambda[i], points[corral[i]]);
    }

    MinNormResult res;
    res.point = x;
    res.coeffs.assign(n, 0.0);
    for (std::size_t i = 0; i < corral.size(); ++i) res.coeffs[corral[i]] = lambda[i];
    return res;
}

Vec project_onto(const Vec& p, const std::vector<Vec>& points) {
    std::vector<Vec> shifted(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) shifted[i] = sub(points[i], p);
    return add(p, min_norm_point(shifted).point);
}

double distance_to(const Vec& p, const std::vector<Vec>& points) {
    return dist(p, project_onto(p, points));
}

bool contains_lp(const Vec& p, const std::vector<Vec>& points, double tol) {
    const std::size_t k = points.size();
    const std::size_t n = p.size();
    std::vector<lp::Constraint> rows;
    for (std::size_t c = 0; c < n; ++c) {
        Vec a(k, 0.0);
        for (std::size_t i = 0; i < k; ++i) a[i] = points[i][c];
        rows.push_back({a, p[c] + tol});
        rows.push_back({scale(a, -1.0), -(p[c] - tol)});
    }
    Vec ones(k, 1.0);
    lp::append_equality(rows, ones, 1.0);
    Box box(Vec(k, 0.0), Vec(k, 1.0));
    return lp::feasible_point(rows, box).ok();
}

std::vector<Vec> prune_to_extreme(std::vector<Vec> points, double tol) {
    // dedupe first
    std::vector<Vec> uniq;
    for (const auto& p : points) {
        bool seen = false;
        for (const auto& q : uniq)
            if (dist(p, q) <= tol) seen = true;
        if (!seen) uniq.push_back(p);
    }
    if (uniq.size() <= 2) return uniq;
    std::vector<Vec> out;
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        std::vector<Vec> others;
        for (std::size_t j = 0; j < uniq.size(); ++j)
            if (j != i) others.push_back(uniq[j]);
        if (distance_to(uniq[i], others) > tol) out.push_back(uniq[i]);
    }
    if (out.empty()) out.push_back(uniq.front());
    return out;
}

}  // namespace gnevi::hull
