#include "gnevi/preference.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gnevi/rng.hpp"

namespace gnevi {

namespace {

constexpr double kMemberTol = 1e-9;

double snap12(double v) {
    double s = std::round(v * 1e12) / 1e12;
    return std::fabs(s - v) <= 1e-12 * std::max(1.0, std::fabs(v)) ? s : v;
}

// Largest b with f(b) > 0 given the bracket f(a) <= 0 < f(b); shrinks to ulp.
void bisect_boundary(const std::function<double(double)>& f, double& a, double& b) {
    for (int i = 0; i < 80; ++i) {
        double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        (f(m) > 0 ? b : a) = m;
    }
}

// Exact 1-D strict upper contour {y in [lo, hi] : f(y) > 0} as an interval
// with endpoint strictness decided by direct evaluation. f must have an
// interval superlevel set (quasiconcave source); split runs raise
// convexity_error.
ConvexRegion contour_1d(const std::function<double(double)>& f, double lo, double hi,
                        const FitParams& params, const Vec& anchor) {
    const int M = std::max(16, params.scan_cells);
    std::vector<double> pts(M + 1), vals(M + 1);
    for (int i = 0; i <= M; ++i) {
        pts[i] = lo + (hi - lo) * i / M;
        vals[i] = f(pts[i]);
    }
    int first = -1, last = -1, best = 0;
    for (int i = 0; i <= M; ++i) {
        if (vals[i] > vals[best]) best = i;
        if (vals[i] > 0) {
            if (first < 0) first = i;
            last = i;
        }
    }
    double zplus;
    if (first < 0) {
        // no grid point above the level; refine the unimodal maximum
        double a = pts[std::max(0, best - 1)], b = pts[std::min(M, best + 1)];
        for (int it = 0; it < 90; ++it) {
            double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
            if (f(m1) < f(m2))
                a = m1;
            else
                b = m2;
        }
        zplus = 0.5 * (a + b);
        if (f(zplus) <= 1e-13) return ConvexRegion::empty_region(1);
    } else {
        for (int i = first; i <= last; ++i)
            if (vals[i] < -1e-12)
                throw convexity_error("strict upper contour set is not an interval", anchor,
                                      {pts[first]}, {pts[last]});
        zplus = pts[best];
    }

    double e_lo, e_hi;
    bool lo_open, hi_open;
    if (f(lo) > 0) {
        e_lo = lo;
        lo_open = false;
    } else {
        double a = lo, b = zplus;
        bisect_boundary(f, a, b);
        e_lo = snap12(b);
        lo_open = f(e_lo) <= 1e-12;
    }
    if (f(hi) > 0) {
        e_hi = hi;
        hi_open = false;
    } else {
        double a = hi, b = zplus;
        bisect_boundary(f, a, b);
        e_hi = snap12(b);
        hi_open = f(e_hi) <= 1e-12;
    }
    return ConvexRegion::segment(e_lo, e_hi, lo_open, hi_open);
}

// n-D support fit: circumscribing halfspaces along a deterministic direction
// fan, refined by boundary bisection with tangent recentering, plus a strict
// separating face through the anchor (the level point itself).
ConvexRegion contour_fit(const std::function<double(const Vec&)>& f, const Vec& anchor,
                         const Box& domain, const FitParams& params) {
    const int n = domain.dim();
    const int g = std::max(4, params.coarse_grid);

    std::vector<Vec> inside;
    Vec bestp = domain.center();
    double bestv = -std::numeric_limits<double>::infinity();
    std::vector<int> idx(n, 0);
    for (;;) {
        Vec p(n);
        for (int i = 0; i < n; ++i) p[i] = domain.lo[i] + (domain.hi[i] - domain.lo[i]) * idx[i] / (g - 1);
        double v = f(p);
        if (v > bestv) {
            bestv = v;
            bestp = p;
        }
        if (v > 0) inside.push_back(p);
        int i = n - 1;
        while (i >= 0 && ++idx[i] == g) idx[i--] = 0;
        if (i < 0) break;
    }
    if (inside.empty()) {
        // local refinement around the best sample before declaring empty
        Vec c = bestp;
        double span = 0;
        for (int i = 0; i < n; ++i) span = std::max(span, (domain.hi[i] - domain.lo[i]) / (g - 1));
        for (int round = 0; round < 6 && bestv <= 1e-13; ++round) {
            std::vector<int> li(n, 0);
            for (;;) {
                Vec p(n);
                for (int i = 0; i < n; ++i)
                    p[i] = std::clamp(c[i] + span * (li[i] - 2) / 2.0, domain.lo[i], domain.hi[i]);
                double v = f(p);
                if (v > bestv) {
                    bestv = v;
                    bestp = p;
                }
                int i = n - 1;
                while (i >= 0 && ++li[i] == 5) li[i--] = 0;
                if (i < 0) break;
            }
            c = bestp;
            span /= 3.0;
        }
        if (bestv <= 1e-13) return ConvexRegion::empty_region(n);
        inside.push_back(bestp);
    }

    auto feasible = [&](const Vec& p) { return domain.contains(p, 0.0) && f(p) > 0; };
    auto push_to_boundary = [&](Vec y, const Vec& d) {
        // largest step tau keeping y + tau d feasible
        double tau_box = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            if (d[i] > 1e-14) tau_box = std::min(tau_box, (domain.hi[i] - y[i]) / d[i]);
            if (d[i] < -1e-14) tau_box = std::min(tau_box, (domain.lo[i] - y[i]) / d[i]);
        }
        tau_box = std::max(tau_box, 0.0);
        if (feasible(axpy(y, tau_box, d))) return axpy(y, tau_box, d);
        double a = 0, b = tau_box;
        for (int i = 0; i < params.bisect_iters; ++i) {
            double m = 0.5 * (a + b);
            (feasible(axpy(y, m, d)) ? a : b) = m;
        }
        return axpy(y, a, d);
    };

    std::vector<Vec> dirs;
    if (n == 2) {
        for (int k = 0; k < params.directions; ++k) {
            double ang = 2.0 * M_PI * k / params.directions;
            dirs.push_back({std::cos(ang), std::sin(ang)});
        }
    } else {
        Rng rng(77003917ull);
        for (int k = 0; k < params.directions; ++k) {
            Vec d(n);
            double nn = 0;
            while (nn < 1e-6) {
                for (auto& v : d) v = rng.uniform(-1.0, 1.0);
                nn = norm(d);
            }
            dirs.push_back(scale(d, 1.0 / nn));
        }
    }

    std::vector<Halfspace> faces;
    for (const auto& d : dirs) {
        Vec y = inside.front();
        for (const auto& p : inside)
            if (dot(d, p) > dot(d, y)) y = p;
        for (int round = 0; round < 3; ++round) {
            y = push_to_boundary(y, d);
            // recenter along tangents to escape the ray's lateral offset
            for (int t = 0; t < n - 1; ++t) {
                Vec tan(n, 0.0);
                if (n == 2) {
                    tan = {-d[1], d[0]};
                } else {
                    tan[(t + 1) % n] = 1.0;
                    tan = axpy(tan, -dot(tan, d), d);
                    if (norm(tan) < 1e-9) continue;
                    tan = normalized(tan);
                }
                Vec hi_pt = push_to_boundary(y, tan);
                Vec lo_pt = push_to_boundary(y, scale(tan, -1.0));
                y = scale(add(hi_pt, lo_pt), 0.5);
                if (!feasible(y)) y = scale(add(y, hi_pt), 0.5);
                if (!feasible(y)) y = hi_pt;
            }
        }
        double h = dot(d, y);
        h = std::max(h, dot(d, anchor));  // the anchor sits on the true boundary
        faces.push_back({d, h, true});
    }

    // strict separating face through the anchor (quasiconcave supporting
    // hyperplane along the utility gradient)
    Vec grad(n, 0.0);
    const double h_fd = 1e-6;
    for (int i = 0; i < n; ++i) {
        Vec p = anchor, q = anchor;
        p[i] += h_fd;
        q[i] -= h_fd;
        grad[i] = (f(p) - f(q)) / (2 * h_fd);
    }
    if (norm(grad) > 1e-9) {
        Vec na = scale(normalized(grad), -1.0);
        faces.push_back({na, dot(na, anchor), true});
    }
    return ConvexRegion::h_polytope(std::move(faces), domain);
}

Vec empty_vec() { return Vec{}; }

}  // namespace

ConvexRegion PreferenceMap::eval(const Vec& x, const Vec& rival) const {
    if (static_cast<int>(x.size()) != own_dim)
        throw std::invalid_argument("PreferenceMap::eval: own dimension mismatch");
    if (!domain.contains(x, 1e-9))
        throw std::out_of_range("PreferenceMap::eval: x outside domain");
    if (rival_dim > 0 && static_cast<int>(rival.size()) != rival_dim)
        throw std::invalid_argument("PreferenceMap::eval: rival dimension mismatch");
    return eval_fn(x, rival);
}

PreferenceMap from_utility(UtilityFn u, Box domain, Box rival_domain, FitParams params) {
    PreferenceMap P;
    P.own_dim = domain.dim();
    P.rival_dim = rival_domain.dim();
    P.domain = domain;
    P.rival_domain = rival_domain;
    P.utility = u;
    P.fit_tol = P.own_dim >= 2 ? params.declared_tol : 0.0;
    P.name = "utility";

    P.eval_fn = [u, domain, params](const Vec& x, const Vec& rival) -> ConvexRegion {
        double theta = u(x, rival);
        if (domain.dim() == 1) {
            auto f = [&](double y) { return u(Vec{y}, rival) - theta; };
            return contour_1d(f, domain.lo[0], domain.hi[0], params, x);
        }
        auto f = [&](const Vec& y) { return u(y, rival) - theta; };
        return contour_fit(f, x, domain, params);
    };

    // convexity spot-check: strict upper contour sets must be convex
    Rng rng(411837055ull);
    Vec rival0 = P.rival_dim > 0 ? rival_domain.center() : empty_vec();
    for (int trial = 0; trial < 5; ++trial) {
        Vec x = trial == 0 ? domain.center() : rng.point_in(domain);
        ConvexRegion region = P.eval_fn(x, rival0);  // throws on 1-D split runs
        if (region.is_empty()) continue;
        std::vector<Vec> pts = sample_region_points(region, 9);
        double theta = u(x, rival0);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            Vec mid = scale(add(pts[i], pts[i + 1]), 0.5);
            if (u(pts[i], rival0) > theta && u(pts[i + 1], rival0) > theta &&
                !(u(mid, rival0) > theta - 1e-12))
                throw convexity_error("midpoint of preferred points not preferred", x, pts[i],
                                      pts[i + 1]);
        }
    }
    return P;
}

std::vector<Vec> sample_region_points(const ConvexRegion& region, int target_count, double tol) {
    if (region.is_empty()) return {};
    const int n = region.dim;
    Box bbox = region_bbox(region);
    int per_axis = std::max(2, static_cast<int>(std::ceil(std::pow(double(target_count), 1.0 / n))));
    std::vector<Vec> out;
    std::vector<int> idx(n, 0);
    for (;;) {
        Vec p(n);
        for (int i = 0; i < n; ++i)
            p[i] = bbox.lo[i] + (bbox.hi[i] - bbox.lo[i]) * idx[i] / (per_axis - 1);
        if (region_contains(region, p, tol)) {
            bool dup = false;
            for (const auto& q : out)
                if (dist(p, q) < 1e-12) dup = true;
            if (!dup) out.push_back(p);
        }
        int i = n - 1;
        while (i >= 0 && ++idx[i] == per_axis) idx[i--] = 0;
        if (i < 0) break;
    }
    if (out.empty()) {
        Vec c = bbox.center();
        if (region.kind != RegionKind::ball && region.kind != RegionKind::empty) {
            Vec p = project(c, region);
            if (region_contains(region, p, tol) || region_contains(region, p, 1e-12))
                out.push_back(p);
        } else if (region_contains(region, c, tol)) {
            out.push_back(c);
        }
    }
    return out;
}

namespace {

Vec geometric_grid(double top, double bottom, int count) {
    Vec g;
    if (top <= bottom) {
        g.push_back(bottom);
        return g;
    }
    for (int i = 0; i < count; ++i)
        g.push_back(top * std::pow(bottom / top, double(i) / (count - 1)));
    return g;
}

std::vector<Vec> nbhd_samples(const Vec& x, double delta, const Box& domain) {
    std::vector<Vec> out{x};
    const int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i) {
        for (double s : {delta, -delta, 0.5 * delta, -0.5 * delta}) {
            Vec p = x;
            p[i] = std::clamp(p[i] + s, domain.lo[i], domain.hi[i]);
            bool dup = false;
            for (const auto& q : out)
                if (dist(p, q) < 1e-15) dup = true;
            if (!dup) out.push_back(p);
        }
    }
    if (n >= 2) {
        for (int mask = 0; mask < (1 << n) && mask < 16; ++mask) {
            Vec p = x;
            for (int i = 0; i < n; ++i)
                p[i] = std::clamp(p[i] + ((mask >> i) & 1 ? delta : -delta) / std::sqrt(double(n)),
                                  domain.lo[i], domain.hi[i]);
            bool dup = false;
            for (const auto& q : out)
                if (dist(p, q) < 1e-15) dup = true;
            if (!dup) out.push_back(p);
        }
    }
    return out;
}

// Uniform per-axis sweeps plus diagonal corners. The upper mid-point verdict
// accepts a neighborhood radius only against this lattice, so its witnesses
// survive refinement of the same lattice (the anti-flakiness property).
std::vector<Vec> neighborhood_sweep(const Vec& x, double delta, const Box& domain) {
    std::vector<Vec> out;
    const int n = static_cast<int>(x.size());
    const int K = 10;
    auto push = [&](Vec p) {
        for (const auto& q : out)
            if (dist(p, q) < 1e-15) return;
        out.push_back(std::move(p));
    };
    push(x);
    for (int i = 0; i < n; ++i)
        for (int k = -K; k <= K; ++k) {
            Vec p = x;
            p[i] = std::clamp(p[i] + delta * k / K, domain.lo[i], domain.hi[i]);
            push(p);
        }
    if (n >= 2) {
        for (int mask = 0; mask < (1 << n) && mask < 16; ++mask) {
            Vec p = x;
            for (int i = 0; i < n; ++i)
                p[i] = std::clamp(p[i] + ((mask >> i) & 1 ? delta : -delta) / std::sqrt(double(n)),
                                  domain.lo[i], domain.hi[i]);
            push(p);
        }
    }
    return out;
}

}  // namespace

namespace {

// Fitted n-D regions carry a declared Hausdorff tolerance; preferred points
// are sampled at twice that depth so verdicts do not ride on fit noise. Exact
// 1-D intervals keep boundary-tight sampling.
double w_sample_tol(const PreferenceMap& P) { return std::max(1e-9, 2.0 * P.fit_tol); }

}  // namespace

MidpointVerdict check_lower_midpoint(const PreferenceMap& P, const Vec& x, const Vec& rival,
                                     const MidpointResolution& params) {
    MidpointVerdict v;
    v.resolution = params;
    ConvexRegion region = P.eval(x, rival);
    if (region.is_empty()) {
        v.verified = true;
        v.vacuous = true;
        return v;
    }
    const Box* rel = params.relative_to_domain ? &P.domain : nullptr;
    Vec radii = geometric_grid(0.5 * P.domain.diameter(), params.min_radius, params.radius_grid);
    std::vector<Vec> ws = sample_region_points(region, params.w_samples, w_sample_tol(P));
    double worst_eps = std::numeric_limits<double>::infinity();
    for (const auto& w : ws) {
        bool found = false;
        for (int k = 0; k < params.t_grid && !found; ++k) {
            double t = double(k) / params.t_grid;
            Vec z = axpy(scale(w, 1.0 - t), t, x);
            for (double eps : radii) {
                if (ball_inside_region(z, eps, region, rel)) {
                    found = true;
                    if (eps < worst_eps) {
                        worst_eps = eps;
                        v.t = t;
                        v.eps = eps;
                        v.witness_w = w;
                    }
                    break;
                }
            }
        }
        if (!found) {
            v.verified = false;
            v.counterexample_w = w;
            return v;
        }
    }
    v.verified = true;
    return v;
}

MidpointVerdict check_upper_midpoint(const PreferenceMap& P, const Vec& x, const Vec& rival,
                                     const MidpointResolution& params) {
    MidpointVerdict v;
    v.resolution = params;
    ConvexRegion region = P.eval(x, rival);
    if (region.is_empty()) {
        v.verified = true;
        v.vacuous = true;
        return v;
    }
    Vec radii = geometric_grid(0.25 * P.domain.diameter(), params.min_radius, params.radius_grid);
    std::vector<Vec> ws = sample_region_points(region, params.w_samples, w_sample_tol(P));
    std::map<std::pair<Vec, Vec>, ConvexRegion> cache;
    auto eval_cached = [&](const Vec& xp, const Vec& yp) -> const ConvexRegion& {
        auto key = std::make_pair(xp, yp);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, P.eval(xp, yp)).first;
        return it->second;
    };
    const bool parametric = P.rival_dim > 0;
    double worst_delta = std::numeric_limits<double>::infinity();
    for (const auto& w : ws) {
        bool found = false;
        for (int k = 0; k < params.t_grid && !found; ++k) {
            double t = double(k) / params.t_grid;
            Vec z = axpy(scale(w, 1.0 - t), t, x);
            for (double delta : radii) {
                bool all_in = true;
                for (const Vec& xp : neighborhood_sweep(x, delta, P.domain)) {
                    if (!parametric) {
                        if (!region_contains(eval_cached(xp, rival), z, kMemberTol)) {
                            all_in = false;
                            break;
                        }
                    } else {
                        // product neighborhoods with equal radii: sweep the
                        // rival block coarsely against every own sample
                        for (const Vec& yp : nbhd_samples(rival, delta, P.rival_domain)) {
                            if (!region_contains(eval_cached(xp, yp), z, kMemberTol)) {
                                all_in = false;
                                break;
                            }
                        }
                        if (!all_in) break;
                    }
                }
                if (all_in) {
                    found = true;
                    if (delta < worst_delta) {
                        worst_delta = delta;
                        v.t = t;
                        v.delta = delta;
                        v.witness_w = w;
                    }
                    break;
                }
            }
        }
        if (!found) {
            v.verified = false;
            v.counterexample_w = w;
            return v;
        }
    }
    v.verified = true;
    return v;
}

ClassifyReport classify_sufficient_conditions(const PreferenceMap& P, const Vec& x,
                                              const Vec& rival,
                                              const MidpointResolution& params) {
    ClassifyReport rep;
    ConvexRegion region = P.eval(x, rival);
    Vec radii = geometric_grid(0.5 * P.domain.diameter(), params.min_radius, params.radius_grid);
    std::vector<Vec> ws = sample_region_points(region, params.w_samples, w_sample_tol(P));

    // open-valuedness of P(x) in the domain box: every sampled point has a
    // relative ball inside the value
    rep.open_valued = true;
    for (const auto& w : ws) {
        bool has_ball = false;
        for (double eps : radii)
            if (ball_inside_region(w, eps, region, &P.domain)) {
                has_ball = true;
                break;
            }
        if (!has_ball) {
            rep.open_valued = false;
            rep.openness_counterexample = w;
            break;
        }
    }
    rep.relation_lsc = rep.open_valued;

    // internal-point condition, relative to the domain box
    rep.internal_point_cond = true;
    for (const auto& w : ws) {
        for (int axis = 0; axis < P.own_dim && rep.internal_point_cond; ++axis) {
            Vec u = unit_axis(P.own_dim, axis);
            bool ok = false;
            for (double s : radii) {
                Vec p = axpy(w, s, u), q = axpy(w, -s, u);
                bool p_ok = !P.domain.contains(p, 0.0) || region_contains(region, p, 1e-12);
                bool q_ok = !P.domain.contains(q, 0.0) || region_contains(region, q, 1e-12);
                if (p_ok && q_ok) {
                    ok = true;
                    break;
                }
            }
            if (!ok) rep.internal_point_cond = false;
        }
        if (!rep.internal_point_cond) break;
    }
    if (ws.empty()) rep.internal_point_cond = true;

    // sampled lower semicontinuity of the map at x
    rep.map_lsc = true;
    std::map<Vec, ConvexRegion> cache;
    auto eval_cached = [&](const Vec& xp) -> const ConvexRegion& {
        auto it = cache.find(xp);
        if (it == cache.end()) it = cache.emplace(xp, P.eval(xp, rival)).first;
        return it->second;
    };
    for (const auto& z : ws) {
        for (double rho : radii) {
            bool some_delta = false;
            for (double delta : radii) {
                bool all_meet = true;
                for (const Vec& xp : nbhd_samples(x, delta, P.domain)) {
                    const ConvexRegion& rp = eval_cached(xp);
                    if (rp.is_empty() || distance_to_region(z, rp) >= rho) {
                        all_meet = false;
                        break;
                    }
                }
                if (all_meet) {
                    some_delta = true;
                    break;
                }
            }
            if (!some_delta) {
                rep.map_lsc = false;
                rep.lsc_counterexample_target = z;
                rep.lsc_counterexample_radius = rho;
                break;
            }
        }
        if (!rep.map_lsc) break;
    }

    rep.lower = check_lower_midpoint(P, x, rival, params);
    rep.upper = check_upper_midpoint(P, x, rival, params);

    rep.impl_open_lower = !rep.open_valued || rep.lower.verified;
    rep.impl_internal_lower = !rep.internal_point_cond || rep.lower.verified;
    rep.impl_lsc_open_upper = !(rep.map_lsc && rep.open_valued) || rep.upper.verified;
    rep.impl_lsc_internal_upper = !(rep.map_lsc && rep.internal_point_cond) || rep.upper.verified;
    return rep;
}

bool irreflexive_at(const PreferenceMap& P, const Vec& x, const Vec& rival, double tol) {
    return !region_contains(P.eval(x, rival), x, tol);
}

namespace fixtures {

PreferenceMap example_3_1() {
    PreferenceMap P;
    P.own_dim = 1;
    P.rival_dim = 0;
    P.domain = Box({0.0}, {1.0});
    P.name = "example-3.1";
    P.utility = [](const Vec& y, const Vec&) { return y[0] < 0.5 ? y[0] : 2.0 - y[0]; };
    P.eval_fn = [](const Vec& x, const Vec&) -> ConvexRegion {
        if (x[0] < 0.5) return ConvexRegion::segment(x[0], 1.0, true, false);
        if (x[0] == 0.5) return ConvexRegion::empty_region(1);
        return ConvexRegion::segment(0.5, x[0], false, true);
    };
    return P;
}

PreferenceMap example_3_2() {
    PreferenceMap P;
    P.own_dim = 1;
    P.rival_dim = 0;
    P.domain = Box({0.0}, {1.0});
    P.name = "example-3.2";
    P.eval_fn = [](const Vec& x, const Vec&) -> ConvexRegion {
        if (x[0] <= 0.5) return ConvexRegion::segment(x[0], 1.0, true, false);
        return ConvexRegion::segment(0.5, 0.75, false, false);
    };
    return P;
}

PreferenceMap by_name(const std::string& name) {
    if (name == "example-3.1") return example_3_1();
    if (name == "example-3.2") return example_3_2();
    throw std::invalid_argument("unknown fixture: " + name);
}

std::vector<std::string> names() { return {"example-3.1", "example-3.2"}; }

}  // namespace fixtures

}  // namespace gnevi
