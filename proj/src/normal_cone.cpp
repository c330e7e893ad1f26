#include "gnevi/normal_cone.hpp"

#include <algorithm>
#include <cmath>

#include "gnevi/hull.hpp"
#include "gnevi/lp.hpp"
#include "gnevi/rng.hpp"

namespace gnevi {

namespace {

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

bool in_conic_hull(const Vec& r, const std::vector<Vec>& gens) {
    if (gens.empty()) return norm(r) < 1e-10;
    const std::size_t k = gens.size();
    const std::size_t n = r.size();
    std::vector<lp::Constraint> rows;
    for (std::size_t c = 0; c < n; ++c) {
        Vec a(k, 0.0);
        for (std::size_t i = 0; i < k; ++i) a[i] = gens[i][c];
        rows.push_back({a, r[c] + 1e-9});
        rows.push_back({scale(a, -1.0), -(r[c] - 1e-9)});
    }
    Box box(Vec(k, 0.0), Vec(k, 100.0));
    return lp::feasible_point(rows, box).ok();
}

}  // namespace

Cone normal_operator(const PreferenceMap& P, const Vec& x, const Vec& rival) {
    return normal_cone_at(P.eval(x, rival), x);
}

Cone NormalConeOperator::eval(const Vec& x, const Vec& rival) const {
    if (policy_ == CachePolicy::none) return normal_operator(P_, x, rival);
    auto key = std::make_pair(x, rival);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, normal_operator(P_, x, rival)).first;
    return it->second;
}

std::vector<Vec> extreme_rays(const Cone& cone) {
    if (cone.full_space || cone.generators.empty()) return {};
    const auto& g = cone.generators;
    if (cone.dim == 1 || g.size() == 1) return g;
    if (cone.dim == 2) {
        Vec sum(2, 0.0);
        for (const auto& v : g) sum = add(sum, v);
        if (norm(sum) < 1e-9) {
            // a line or a width-pi wedge: the boundary pair is extreme
            for (const auto& v : g)
                for (const auto& w : g)
                    if (dist(scale(v, -1.0), w) < 1e-9) return {v, w};
            return g;
        }
        Vec r0 = normalized(sum);
        double lo = 0, hi = 0;
        Vec glo = g.front(), ghi = g.front();
        bool set = false;
        for (const auto& v : g) {
            double ang = std::atan2(cross2(r0, v), dot(r0, v));
            if (!set || ang < lo) {
                lo = ang;
                glo = v;
            }
            if (!set || ang > hi) {
                hi = ang;
                ghi = v;
            }
            set = true;
        }
        if (dist(glo, ghi) < 1e-12) return {glo};
        return {glo, ghi};
    }
    // general: drop any generator lying in the conic hull of the others
    std::vector<Vec> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::vector<Vec> others;
        for (std::size_t j = 0; j < g.size(); ++j)
            if (j != i) others.push_back(g[j]);
        if (!in_conic_hull(g[i], others)) out.push_back(g[i]);
    }
    if (out.empty()) out.push_back(g.front());
    return out;
}

CompactConvexSet principal_set(const PreferenceMap& P, const Vec& x, const Vec& rival) {
    ConvexRegion value = P.eval(x, rival);
    if (value.is_empty()) return CompactConvexSet::ball(P.own_dim);
    Cone cone = normal_cone_at(value, x);
    if (cone.full_space) return CompactConvexSet::ball(P.own_dim);
    if (cone.is_zero())
        throw degenerate_cone_error("principal_set: normal cone collapsed to {0}");
    return CompactConvexSet::hull(extreme_rays(cone), P.own_dim);
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

std::vector<Vec> ball_offsets(const Vec& c, double r, const Box& domain) {
    std::vector<Vec> out{domain.clamp(c)};
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (double s : {r, -r, 0.5 * r, -0.5 * r}) {
            Vec p = c;
            p[i] += s;
            p = domain.clamp(p);
            bool dup = false;
            for (const auto& q : out)
                if (dist(p, q) < 1e-15) dup = true;
            if (!dup) out.push_back(p);
        }
    }
    return out;
}

}  // namespace

CapSearchResult find_cap_witness(const PreferenceMap& P, const Vec& anchor_x,
                                 const Vec& anchor_rival, const CapSearchParams& params) {
    ConvexRegion value = P.eval(anchor_x, anchor_rival);
    if (value.is_empty())
        throw std::domain_error("find_cap_witness: empty preference value at the anchor");

    CapSearchResult res;
    std::vector<Vec> ws = sample_region_points(value, params.w_candidates);
    Vec radii = geometric_grid(0.25 * P.domain.diameter(), params.min_radius, params.radius_grid);
    std::map<std::pair<Vec, Vec>, ConvexRegion> cache;
    auto eval_cached = [&](const Vec& xp, const Vec& yp) -> const ConvexRegion& {
        auto key = std::make_pair(xp, yp);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, P.eval(xp, yp)).first;
        return it->second;
    };
    const bool parametric = P.rival_dim > 0;

    for (const auto& w : ws) {
        for (int k = 0; k < params.t_grid; ++k) {
            double t = double(k) / params.t_grid;
            Vec z = axpy(scale(w, 1.0 - t), t, anchor_x);
            for (double eps : radii) {
                if (res.found && eps <= res.witness.eps) break;  // cannot improve
                bool ok = true;
                for (const Vec& xp : ball_offsets(anchor_x, eps, P.domain)) {
                    if (!parametric) {
                        if (!ball_inside_region(z, 2.0 * eps, eval_cached(xp, anchor_rival),
                                                nullptr)) {
                            ok = false;
                            break;
                        }
                    } else {
                        for (const Vec& yp : ball_offsets(anchor_rival, eps, P.rival_domain)) {
                            if (!ball_inside_region(z, 2.0 * eps, eval_cached(xp, yp), nullptr)) {
                                ok = false;
                                break;
                            }
                        }
                        if (!ok) break;
                    }
                }
                if (ok) {
                    if (!res.found || eps > res.witness.eps) {
                        res.found = true;
                        res.witness.anchor_x = anchor_x;
                        res.witness.anchor_rival = anchor_rival;
                        res.witness.w = w;
                        res.witness.t = t;
                        res.witness.eps = eps;
                        res.witness.plane_normal = scale(sub(anchor_x, w), 1.0 - t);
                    }
                    break;
                }
            }
        }
    }
    if (!res.found) res.reason = "no (w, t, eps) witness at the search resolution";
    return res;
}

ConvexRegion cap_slice(const CapWitness& witness, const PreferenceMap& P, const Vec& x,
                       const Vec& rival) {
    double d = dist(x, witness.anchor_x);
    if (P.rival_dim > 0) d = std::max(d, dist(rival, witness.anchor_rival));
    if (d > witness.eps + 1e-12)
        throw std::domain_error("cap_slice: point outside the witness neighborhood");

    Cone cone = normal_operator(P, x, rival);
    const Vec& a = witness.plane_normal;
    const double level = witness.eps;
    const int n = P.own_dim;

    if (cone.full_space) {
        // slice is the hyperplane <s, a> = level inside the unit box
        if (n == 1) return ConvexRegion::v_polytope({Vec{level / a[0]}});
        if (n == 2) {
            std::vector<Vec> pts;
            for (int axis = 0; axis < 2; ++axis) {
                for (double b : {-1.0, 1.0}) {
                    // fix s[axis] = b, solve for the other coordinate
                    int o = 1 - axis;
                    if (std::fabs(a[o]) < 1e-14) continue;
                    double so = (level - a[axis] * b) / a[o];
                    if (std::fabs(so) <= 1.0 + 1e-12) {
                        Vec s(2);
                        s[axis] = b;
                        s[o] = so;
                        pts.push_back(s);
                    }
                }
            }
            if (pts.empty()) throw property_violation("cap_slice: empty slice of full space");
            return ConvexRegion::v_polytope(pts);
        }
        throw std::invalid_argument("cap_slice: full-space slice above dim 2");
    }
    if (cone.is_zero()) throw property_violation("cap_slice: empty slice (zero cone)");

    std::vector<Vec> pts;
    for (const auto& g : cone.generators) {
        double c = dot(g, a);
        if (c <= 1e-12)
            throw property_violation("cap_slice: unbounded slice (generator misses the cap)");
        pts.push_back(scale(g, level / c));
    }
    return ConvexRegion::v_polytope(pts);
}

CompactConvexSet blend_cap_slices(const std::vector<CapWitness>& witnesses,
                                  const PreferenceMap& P, const Vec& x, const Vec& rival) {
    std::vector<double> weight;
    std::vector<std::vector<Vec>> verts;
    double total = 0;
    for (const auto& wit : witnesses) {
        double d = dist(x, wit.anchor_x);
        if (P.rival_dim > 0) d = std::max(d, dist(rival, wit.anchor_rival));
        double raw = std::max(0.0, 1.0 - d / wit.eps);  // hat function of the anchor ball
        if (raw <= 0) continue;
        weight.push_back(raw);
        verts.push_back(cap_slice(wit, P, x, rival).vertices);
        total += raw;
    }
    if (weight.empty())
        throw std::domain_error("blend_cap_slices: no cap covers the point");
    for (auto& w : weight) w /= total;

    // weighted Minkowski sum: hull of weighted vertex combinations
    std::vector<Vec> combos{Vec(P.own_dim, 0.0)};
    for (std::size_t k = 0; k < verts.size(); ++k) {
        std::vector<Vec> next;
        for (const auto& base : combos)
            for (const auto& v : verts[k]) next.push_back(axpy(base, weight[k], v));
        combos = std::move(next);
    }
    return CompactConvexSet::hull(hull::prune_to_extreme(combos, 1e-10), P.own_dim);
}

namespace {

// Hypothesis gates. The lineality and strict-negativity claims need interior
// witness balls in the ambient space, so those two run the lower mid-point
// check in absolute mode; the nonzero-normal claim uses the domain-relative
// convention.
bool lower_midpoint_ok(const PreferenceMap& P, const Vec& x, const Vec& rival,
                       MidpointResolution params, bool absolute) {
    if (absolute) params.relative_to_domain = false;
    return check_lower_midpoint(P, x, rival, params).verified;
}

}  // namespace

PropertyCheckReport check_property(const PreferenceMap& P, NormalProperty which,
                                   const PropertySamples& samples) {
    PropertyCheckReport rep;
    rep.which = which;
    for (std::size_t ai = 0; ai < samples.anchors.size(); ++ai) {
        const auto& [x, rival] = samples.anchors[ai];
        ConvexRegion value = P.eval(x, rival);
        auto note = [&](const std::string& msg) {
            rep.notes.push_back("anchor " + std::to_string(ai) + ": " + msg);
        };

        switch (which) {
            case NormalProperty::nonzero_normal: {
                if (!irreflexive_at(P, x, rival) ||
                    !lower_midpoint_ok(P, x, rival, samples.midpoint, false)) {
                    ++rep.hypothesis_filtered;
                    break;
                }
                ++rep.checked;
                Cone cone = normal_operator(P, x, rival);
                if (!cone.full_space && cone.generators.empty()) {
                    ++rep.violations;
                    note("no nonzero normal");
                }
                break;
            }
            case NormalProperty::trivial_lineality: {
                if (value.is_empty() || !irreflexive_at(P, x, rival) ||
                    !lower_midpoint_ok(P, x, rival, samples.midpoint, true)) {
                    ++rep.hypothesis_filtered;
                    break;
                }
                ++rep.checked;
                Cone cone = normal_operator(P, x, rival);
                if (cone.full_space) {
                    ++rep.violations;
                    note("full-space cone on a non-empty value");
                    break;
                }
                for (const auto& g : cone.generators) {
                    double fwd = support_value(value, g) - dot(g, x);
                    double bwd = support_value(value, scale(g, -1.0)) + dot(g, x);
                    if (fwd <= 1e-9 && bwd <= 1e-9) {
                        ++rep.violations;
                        note("generator with its opposite in the cone");
                        break;
                    }
                }
                break;
            }
            case NormalProperty::strict_negativity: {
                if (value.is_empty() || !irreflexive_at(P, x, rival) ||
                    !lower_midpoint_ok(P, x, rival, samples.midpoint, true)) {
                    ++rep.hypothesis_filtered;
                    break;
                }
                ++rep.checked;
                Cone cone = normal_operator(P, x, rival);
                if (cone.full_space) break;  // nothing to test pointwise
                std::vector<Vec> ss = cone.generators;
                if (ss.size() >= 2) {
                    Vec mix(P.own_dim, 0.0);
                    for (const auto& g : ss) mix = add(mix, g);
                    if (norm(mix) > 1e-9) ss.push_back(normalized(mix));
                }
                bool bad = false;
                for (const auto& w : sample_region_points(value, samples.w_per_anchor))
                    for (const auto& s : ss)
                        if (!(dot(s, sub(w, x)) < -1e-12)) bad = true;
                if (bad) {
                    ++rep.violations;
                    note("non-strict pairing of a nonzero normal with a preferred point");
                }
                break;
            }
            case NormalProperty::closed_graph: {
                if (value.is_empty()) {
                    ++rep.hypothesis_filtered;
                    break;
                }
                CapSearchResult cap = find_cap_witness(P, x, rival);
                if (!cap.found) {
                    ++rep.hypothesis_filtered;
                    break;
                }
                Rng rng = Rng::labeled(977 + ai, "closed-graph");
                for (int sq = 0; sq < samples.sequences_per_anchor; ++sq) {
                    ++rep.checked;
                    Vec d(P.own_dim);
                    for (auto& v : d) v = rng.uniform(-1.0, 1.0);
                    if (norm(d) < 1e-9) d[0] = 1.0;
                    d = normalized(d);
                    Vec limit = P.domain.clamp(axpy(x, 0.5 * cap.witness.eps * rng.next_double(), d));
                    if (dist(limit, x) > cap.witness.eps) limit = x;
                    // walk the sequence into the limit point; graph closedness
                    // means the selections' limit stays inside the limit slice
                    Vec s_last;
                    bool broke = false;
                    for (int k = 1; k <= 24; ++k) {
                        double r = cap.witness.eps * std::pow(0.5, k);
                        Vec xk = P.domain.clamp(axpy(limit, r, d));
                        if (dist(xk, cap.witness.anchor_x) > cap.witness.eps) continue;
                        try {
                            ConvexRegion slice = cap_slice(cap.witness, P, xk, rival);
                            std::vector<Vec> shifted = slice.vertices;
                            s_last = hull::min_norm_point(shifted).point;
                        } catch (const property_violation&) {
                            broke = true;
                            break;
                        }
                        if (r < 1e-7) break;
                    }
                    if (broke || s_last.empty()) {
                        ++rep.hypothesis_filtered;
                        --rep.checked;
                        continue;
                    }
                    ConvexRegion limit_slice = cap_slice(cap.witness, P, limit, rival);
                    if (distance_to_region(s_last, limit_slice) > samples.sequence_tol) {
                        ++rep.violations;
                        note("sequence limit escaped the cap at the limit point");
                    }
                }
                break;
            }
        }
    }
    return rep;
}

}  // namespace gnevi
