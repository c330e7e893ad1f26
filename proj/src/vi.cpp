#include "gnevi/vi.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "gnevi/hull.hpp"
#include "gnevi/lp.hpp"

namespace gnevi::vi {

MultiplierDecision best_multiplier(const CompactConvexSet& T, const Vec& x,
                                   const std::vector<Vec>& feasible_vertices) {
    MultiplierDecision d;
    const int n = static_cast<int>(x.size());
    if (T.unit_ball) {
        // zero always belongs to the ball and attains residual 0, which is
        // optimal whenever x lies in the hull of the feasible vertices
        d.multiplier.assign(n, 0.0);
        d.residual = 0.0;
        return d;
    }
    if (T.generators.empty())
        throw std::invalid_argument("best_multiplier: operator value has no generators");
    d.scale = T.max_generator_norm();
    if (d.scale <= 1e-15) {  // T == {0}
        d.multiplier.assign(n, 0.0);
        d.residual = 0.0;
        d.scale = 1.0;
        return d;
    }
    const std::size_t k = T.generators.size();
    std::vector<Vec> gen(k);
    for (std::size_t i = 0; i < k; ++i) gen[i] = scale(T.generators[i], 1.0 / d.scale);

    // maximize delta s.t. sum_i l_i <g_i, v_j - x> >= delta, sum l = 1, l >= 0
    double bound = 1.0;
    std::vector<lp::Constraint> rows;
    for (const auto& v : feasible_vertices) {
        Vec a(k + 1, 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            double c = dot(gen[i], sub(v, x));
            a[i] = -c;
            bound = std::max(bound, std::fabs(c));
        }
        a[k] = 1.0;
        rows.push_back({a, 0.0});
    }
    Vec ones(k + 1, 1.0);
    ones[k] = 0.0;
    lp::append_equality(rows, ones, 1.0);
    Vec lo(k + 1, 0.0), hi(k + 1, 1.0);
    lo[k] = -(bound + 1.0);
    hi[k] = bound + 1.0;
    Vec obj(k + 1, 0.0);
    obj[k] = -1.0;
    lp::Result res = lp::solve(obj, rows, Box(lo, hi));
    if (!res.ok()) throw std::runtime_error("best_multiplier: decision LP failed");
    d.residual = res.argmin[k];
    d.multiplier.assign(n, 0.0);
    for (std::size_t i = 0; i < k; ++i) d.multiplier = axpy(d.multiplier, res.argmin[i], gen[i]);
    return d;
}

namespace {

Vec grid_point(const Box& box, int per_axis, std::size_t flat) {
    const int n = box.dim();
    Vec p(n);
    std::size_t rest = flat;
    for (int i = n - 1; i >= 0; --i) {
        std::size_t k = rest % per_axis;
        rest /= per_axis;
        p[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * double(k) / (per_axis - 1);
    }
    return p;
}

}  // namespace

std::vector<SolutionCertificate> solve_vi_grid(const VIProblem& prob, const GridParams& params) {
    const int n = prob.feasible.dim;
    if (n > 3) throw std::invalid_argument("solve_vi_grid: dimension above 3");
    if (params.points_per_axis < 2) throw std::invalid_argument("solve_vi_grid: grid below 2");
    if (prob.feasible.is_empty()) return {};
    Box box = region_bbox(prob.feasible);
    std::vector<Vec> verts = region_vertices(prob.feasible);
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(params.points_per_axis);

    std::vector<std::optional<SolutionCertificate>> slots(total);
    auto eval_point = [&](std::size_t flat) {
        Vec x = grid_point(box, params.points_per_axis, flat);
        if (!region_contains(prob.feasible, x, 1e-12)) return;
        MultiplierDecision d = best_multiplier(prob.op(x), x, verts);
        if (d.residual >= -params.tol) {
            SolutionCertificate cert;
            cert.point = x;
            cert.multiplier = d.multiplier;
            cert.residual = d.residual;
            cert.scale = d.scale;
            cert.method = Method::grid;
            cert.verified = true;
            cert.tol = params.tol;
            slots[flat] = cert;
        }
    };

    if (params.stop_at_first) {
        const std::size_t chunk = 2048;
        for (std::size_t base = 0; base < total; base += chunk) {
            std::size_t end = std::min(total, base + chunk);
            par::for_index(end - base, params.mode, [&](std::size_t i) { eval_point(base + i); });
            for (std::size_t flat = base; flat < end; ++flat)
                if (slots[flat]) return {*slots[flat]};
        }
        return {};
    }

    par::for_index(total, params.mode, [&](std::size_t flat) { eval_point(flat); });
    std::vector<SolutionCertificate> out;
    for (std::size_t flat = 0; flat < total; ++flat)
        if (slots[flat]) out.push_back(*slots[flat]);
    return out;
}

namespace {

Vec select_element(const CompactConvexSet& T, FixedPointParams::Selection sel, int fixed_index,
                   int dim) {
    if (T.unit_ball) return Vec(dim, 0.0);  // min-norm element of the ball
    if (sel == FixedPointParams::Selection::fixed_index) {
        int i = std::clamp(fixed_index, 0, static_cast<int>(T.generators.size()) - 1);
        return T.generators[i];
    }
    return hull::min_norm_point(T.generators).point;
}

}  // namespace

FixedPointOutcome solve_qvi_fixed_point(const QVIProblem& prob, const FixedPointParams& params) {
    FixedPointOutcome out;
    Vec x = params.start;
    {
        ConvexRegion k0 = prob.constraint(x);
        if (k0.is_empty()) {
            out.failure = "constraint value empty at the start";
            return out;
        }
        x = project(x, k0);
    }
    double step = params.step;
    int calm = 0, flips = 0;
    Vec prev_delta;
    if (params.record_trace) out.trace.push_back(x);

    for (int it = 0; it < params.max_iters; ++it) {
        Vec s = select_element(prob.op(x), params.selection, params.fixed_index,
                               static_cast<int>(x.size()));
        ConvexRegion K = prob.constraint(x);
        if (K.is_empty()) {
            out.failure = "constraint value became empty";
            out.iterations = it;
            return out;
        }
        Vec next = project(axpy(x, -step, s), K);
        Vec delta = sub(next, x);
        x = next;
        if (params.record_trace) out.trace.push_back(x);
        ++out.iterations;

        if (!prev_delta.empty() && dot(delta, prev_delta) < 0) {
            if (++flips >= 5) {
                step *= 0.5;
                flips = 0;
                out.events.push_back("step halved to " + std::to_string(step) + " at iteration " +
                                     std::to_string(it));
            }
        } else {
            flips = 0;
        }
        prev_delta = delta;

        calm = norm(delta) <= 1e-8 ? calm + 1 : 0;
        if (calm >= 10) {
            out.converged = true;
            out.certificate = verify_solution(prob, x, params.tol);
            out.certificate.method = Method::fixed_point;
            return out;
        }
    }
    out.failure = "no convergence within max_iters";
    return out;
}

SolutionCertificate verify_solution(const VIProblem& prob, const Vec& x, double tol) {
    SolutionCertificate cert;
    cert.point = x;
    cert.tol = tol;
    cert.method = Method::grid;
    if (!region_contains(prob.feasible, x, tol)) {
        cert.note = "infeasible point";
        return cert;
    }
    MultiplierDecision d = best_multiplier(prob.op(x), x, region_vertices(prob.feasible));
    cert.multiplier = d.multiplier;
    cert.residual = d.residual;
    cert.scale = d.scale;
    cert.verified = d.residual >= -tol;
    if (!cert.verified) cert.note = "defining inequality fails";
    return cert;
}

SolutionCertificate verify_solution(const QVIProblem& prob, const Vec& x, double tol) {
    SolutionCertificate cert;
    cert.point = x;
    cert.tol = tol;
    cert.method = Method::grid;
    ConvexRegion K = prob.constraint(x);
    if (K.is_empty() || !region_contains(K, x, tol)) {
        cert.note = "point not in its own constraint value";
        return cert;
    }
    MultiplierDecision d = best_multiplier(prob.op(x), x, region_vertices(K));
    cert.multiplier = d.multiplier;
    cert.residual = d.residual;
    cert.scale = d.scale;
    cert.verified = d.residual >= -tol;
    if (!cert.verified) cert.note = "defining inequality fails";
    return cert;
}

}  // namespace gnevi::vi
