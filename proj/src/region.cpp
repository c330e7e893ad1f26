#include "gnevi/region.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "gnevi/hull.hpp"
#include "gnevi/lp.hpp"
#include "gnevi/rng.hpp"

namespace gnevi {

namespace {

constexpr double kGeomTol = 1e-9;
constexpr double kExactTol = 1e-12;

void check_dim(const ConvexRegion& r, const Vec& p, const char* what) {
    if (static_cast<int>(p.size()) != r.dim)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

double face_scale(const Halfspace& f, const Vec& p) {
    return 1.0 + std::fabs(f.offset) + norm(f.normal) * norm(p);
}

Vec rotate2(const Vec& v, double angle) {
    return {v[0] * std::cos(angle) - v[1] * std::sin(angle),
            v[0] * std::sin(angle) + v[1] * std::cos(angle)};
}

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

// ---- polar cones of finite point sets -------------------------------------

Cone polar_cone_1d(const std::vector<Vec>& diffs) {
    bool pos = false, neg = false, nonzero = false;
    for (const auto& u : diffs) {
        if (std::fabs(u[0]) <= 1e-13) continue;
        nonzero = true;
        (u[0] > 0 ? pos : neg) = true;
    }
    if (!nonzero) return Cone::full(1);
    if (pos && neg) return Cone::zero(1);
    return Cone::from_rays({Vec{pos ? -1.0 : 1.0}}, 1);
}

bool ray_feasible(const Vec& c, const std::vector<Vec>& us) {
    for (const auto& u : us)
        if (dot(c, u) > 1e-10 * std::max(1.0, norm(u))) return false;
    return true;
}

Cone polar_cone_2d(const std::vector<Vec>& diffs) {
    std::vector<Vec> us;
    for (const auto& u : diffs)
        if (norm(u) > 1e-13) us.push_back(u);
    if (us.empty()) return Cone::full(2);

    // Extreme rays of the polar wedge are perpendicular to some active
    // constraint, so the perp candidates are exhaustive.
    std::vector<Vec> cand;
    for (const auto& u : us) {
        Vec p = normalized(Vec{-u[1], u[0]});
        if (ray_feasible(p, us)) cand.push_back(p);
        Vec q = scale(p, -1.0);
        if (ray_feasible(q, us)) cand.push_back(q);
    }
    if (cand.empty()) return Cone::zero(2);

    Vec sum(2, 0.0);
    for (const auto& c : cand) sum = add(sum, c);
    if (norm(sum) < 1e-9) {
        // width-pi wedge (a half-plane) or a line; add the mid direction when
        // it is feasible so the generators span the full wedge
        Vec g = cand.front();
        std::vector<Vec> gens{g, scale(g, -1.0)};
        Vec m{-g[1], g[0]};
        if (ray_feasible(m, us))
            gens.push_back(m);
        else if (ray_feasible(scale(m, -1.0), us))
            gens.push_back(scale(m, -1.0));
        return Cone::from_rays(gens, 2);
    }
    Vec r0 = normalized(sum);
    double lo = 0, hi = 0;
    Vec glo = r0, ghi = r0;
    for (const auto& c : cand) {
        double ang = std::atan2(cross2(r0, c), dot(r0, c));
        if (ang < lo) {
            lo = ang;
            glo = c;
        }
        if (ang > hi) {
            hi = ang;
            ghi = c;
        }
    }
    return Cone::from_rays({glo, ghi}, 2);
}

// Enumerate vertices of {A s <= b} intersected with box by n-subsets of the
// stacked constraints. Desk scale only.
std::vector<Vec> vertices_by_subsets(const std::vector<Halfspace>& faces, const Box& box) {
    const int n = box.dim();
    std::vector<Vec> normals;
    Vec offsets;
    for (const auto& f : faces) {
        normals.push_back(f.normal);
        offsets.push_back(f.offset);
    }
    for (int i = 0; i < n; ++i) {
        normals.push_back(unit_axis(n, i, 1.0));
        offsets.push_back(box.hi[i]);
        normals.push_back(unit_axis(n, i, -1.0));
        offsets.push_back(-box.lo[i]);
    }
    const int m = static_cast<int>(normals.size());
    if (n > 8) throw std::invalid_argument("vertex enumeration: dimension > 8");

    std::vector<Vec> out;
    std::vector<int> idx(n);
    // iterate n-subsets of m constraints
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == n) {
            std::vector<Vec> M(n);
            Vec rhs(n);
            for (int k = 0; k < n; ++k) {
                M[k] = normals[idx[k]];
                rhs[k] = offsets[idx[k]];
            }
            Vec x;
            if (!solve_dense(M, rhs, x, 1e-10)) return;
            for (int k = 0; k < m; ++k)
                if (dot(normals[k], x) > offsets[k] + kGeomTol * (1.0 + std::fabs(offsets[k])))
                    return;
            for (const auto& v : out)
                if (dist(v, x) < 1e-8) return;
            out.push_back(x);
            return;
        }
        for (int i = start; i <= m - (n - depth); ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    if (m >= n) rec(0, 0);
    return out;
}

Cone polar_cone_nd(const std::vector<Vec>& diffs, int n) {
    std::vector<Vec> us;
    for (const auto& u : diffs)
        if (norm(u) > 1e-13) us.push_back(u);
    if (us.empty()) return Cone::full(n);

    std::vector<Halfspace> faces;
    for (const auto& u : us) faces.push_back({u, 0.0, false});
    Box unit_box(Vec(n, -1.0), Vec(n, 1.0));
    std::vector<Vec> verts = vertices_by_subsets(faces, unit_box);
    std::vector<Vec> rays;
    for (const auto& v : verts)
        if (norm(v) > 1e-8) rays.push_back(v);
    if (rays.empty()) return Cone::zero(n);
    return Cone::from_rays(rays, n);
}

Cone polar_cone_of_diffs(const std::vector<Vec>& diffs, int n) {
    if (n == 1) return polar_cone_1d(diffs);
    if (n == 2) return polar_cone_2d(diffs);
    return polar_cone_nd(diffs, n);
}

// ---- vertex enumeration for H-polytopes ------------------------------------

std::vector<Vec> h_to_v_1d(const std::vector<Halfspace>& faces, const Box& box) {
    double lo = box.lo[0], hi = box.hi[0];
    for (const auto& f : faces) {
        double a = f.normal[0];
        if (std::fabs(a) < 1e-14) {
            if (f.offset < -kGeomTol) return {};
            continue;
        }
        if (a > 0)
            hi = std::min(hi, f.offset / a);
        else
            lo = std::max(lo, f.offset / a);
    }
    if (lo > hi + kGeomTol) return {};
    if (std::fabs(hi - lo) < 1e-12) return {Vec{lo}};
    return {Vec{lo}, Vec{hi}};
}

std::vector<Vec> h_to_v_2d(const std::vector<Halfspace>& faces_in, const Box& box) {
    std::vector<Halfspace> faces = faces_in;
    for (int i = 0; i < 2; ++i) {
        faces.push_back({unit_axis(2, i, 1.0), box.hi[i], false});
        faces.push_back({unit_axis(2, i, -1.0), -box.lo[i], false});
    }
    const std::size_t m = faces.size();
    std::vector<Vec> cand;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            double det = cross2(faces[i].normal, faces[j].normal);
            double sc = norm(faces[i].normal) * norm(faces[j].normal);
            if (std::fabs(det) < 1e-12 * std::max(1.0, sc)) continue;
            double x0 = (faces[i].offset * faces[j].normal[1] - faces[j].offset * faces[i].normal[1]) / det;
            double x1 = (faces[i].normal[0] * faces[j].offset - faces[j].normal[0] * faces[i].offset) / det;
            cand.push_back({x0, x1});
        }
    }
    std::vector<Vec> out;
    for (const auto& x : cand) {
        bool ok = true;
        for (const auto& f : faces)
            if (dot(f.normal, x) > f.offset + kGeomTol * face_scale(f, x)) ok = false;
        if (!ok) continue;
        bool dup = false;
        for (const auto& v : out)
            if (dist(v, x) < 1e-8) dup = true;
        if (!dup) out.push_back(x);
    }
    if (out.size() > 2) {
        Vec c(2, 0.0);
        for (const auto& v : out) c = add(c, v);
        c = scale(c, 1.0 / static_cast<double>(out.size()));
        std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) {
            return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
        });
    }
    return out;
}

std::vector<Halfspace> v_to_h_2d(const std::vector<Vec>& verts_in) {
    std::vector<Vec> verts = hull::prune_to_extreme(verts_in, 1e-10);
    std::vector<Halfspace> out;
    if (verts.size() == 1) {
        for (int i = 0; i < 2; ++i) {
            out.push_back({unit_axis(2, i, 1.0), verts[0][i], false});
            out.push_back({unit_axis(2, i, -1.0), -verts[0][i], false});
        }
        return out;
    }
    if (verts.size() == 2) {
        Vec d = normalized(sub(verts[1], verts[0]));
        Vec p{-d[1], d[0]};
        double hi = std::max(dot(d, verts[0]), dot(d, verts[1]));
        double lo = std::min(dot(d, verts[0]), dot(d, verts[1]));
        out.push_back({d, hi, false});
        out.push_back({scale(d, -1.0), -lo, false});
        out.push_back({p, dot(p, verts[0]), false});
        out.push_back({scale(p, -1.0), -dot(p, verts[0]), false});
        return out;
    }
    // counter-clockwise order around the centroid
    Vec c(2, 0.0);
    for (const auto& v : verts) c = add(c, v);
    c = scale(c, 1.0 / static_cast<double>(verts.size()));
    std::sort(verts.begin(), verts.end(), [&](const Vec& a, const Vec& b) {
        return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
    });
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const Vec& a = verts[i];
        const Vec& b = verts[(i + 1) % verts.size()];
        Vec e = sub(b, a);
        if (norm(e) < 1e-13) continue;
        Vec n = normalized(Vec{e[1], -e[0]});
        out.push_back({n, dot(n, a), false});
    }
    return out;
}

Box bbox_of_points(const std::vector<Vec>& pts) {
    Vec lo = pts.front(), hi = pts.front();
    for (const auto& p : pts)
        for (std::size_t i = 0; i < p.size(); ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    return Box(lo, hi);
}

}  // namespace

// ---- factories --------------------------------------------------------------

ConvexRegion ConvexRegion::empty_region(int dim) {
    ConvexRegion r;
    r.kind = RegionKind::empty;
    r.dim = dim;
    return r;
}

ConvexRegion ConvexRegion::interval_product(Box b, std::vector<std::uint8_t> lo_strict,
                                            std::vector<std::uint8_t> hi_strict) {
    const int n = b.dim();
    if (lo_strict.empty()) lo_strict.assign(n, 0);
    if (hi_strict.empty()) hi_strict.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        if (b.lo[i] > b.hi[i]) return empty_region(n);
        if (b.lo[i] == b.hi[i] && (lo_strict[i] || hi_strict[i])) return empty_region(n);
    }
    ConvexRegion r;
    r.kind = RegionKind::interval;
    r.dim = n;
    r.bounds = std::move(b);
    r.lo_strict = std::move(lo_strict);
    r.hi_strict = std::move(hi_strict);
    return r;
}

ConvexRegion ConvexRegion::segment(double lo, double hi, bool lo_open, bool hi_open) {
    if (lo > hi) return empty_region(1);
    return interval_product(Box({lo}, {hi}), {static_cast<std::uint8_t>(lo_open)},
                            {static_cast<std::uint8_t>(hi_open)});
}

ConvexRegion ConvexRegion::h_polytope(std::vector<Halfspace> faces, Box bounding) {
    ConvexRegion r;
    r.kind = RegionKind::hpoly;
    r.dim = bounding.dim();
    r.faces = std::move(faces);
    r.hull_box = std::move(bounding);
    // detect an empty closure right away
    std::vector<lp::Constraint> rows;
    for (const auto& f : r.faces) rows.push_back({f.normal, f.offset});
    if (!lp::feasible_point(rows, r.hull_box).ok()) return empty_region(r.dim);
    return r;
}

ConvexRegion ConvexRegion::v_polytope(std::vector<Vec> vertices) {
    if (vertices.empty()) throw std::invalid_argument("v_polytope: no vertices");
    ConvexRegion r;
    r.kind = RegionKind::vpoly;
    r.dim = static_cast<int>(vertices.front().size());
    r.vertices = hull::prune_to_extreme(std::move(vertices), 1e-10);
    return r;
}

ConvexRegion ConvexRegion::ball_region(Vec center, double radius) {
    if (radius < 0) throw std::invalid_argument("ball_region: negative radius");
    ConvexRegion r;
    r.kind = RegionKind::ball;
    r.dim = static_cast<int>(center.size());
    r.center = std::move(center);
    r.radius = radius;
    return r;
}

// ---- membership -------------------------------------------------------------

bool region_contains(const ConvexRegion& r, const Vec& p, double tol) {
    if (r.kind == RegionKind::empty) return false;
    check_dim(r, p, "region_contains");
    if (tol < 0) throw std::invalid_argument("region_contains: negative tol");
    switch (r.kind) {
        case RegionKind::interval:
            for (int i = 0; i < r.dim; ++i) {
                double mlo = p[i] - r.bounds.lo[i];
                double mhi = r.bounds.hi[i] - p[i];
                if (r.lo_strict[i] ? (mlo <= tol) : (mlo < -tol)) return false;
                if (r.hi_strict[i] ? (mhi <= tol) : (mhi < -tol)) return false;
            }
            return true;
        case RegionKind::hpoly: {
            if (!r.hull_box.contains(p, tol)) return false;
            for (const auto& f : r.faces) {
                double margin = f.offset - dot(f.normal, p);
                if (f.strict ? (margin <= tol) : (margin < -tol)) return false;
            }
            return true;
        }
        case RegionKind::vpoly:
            return hull::distance_to(p, r.vertices) <= tol;
        case RegionKind::ball:
            return dist(p, r.center) <= r.radius + tol;
        default:
            return false;
    }
}

// ---- support ----------------------------------------------------------------

double support_value(const ConvexRegion& r, const Vec& direction) {
    if (r.kind == RegionKind::empty) return -std::numeric_limits<double>::infinity();
    check_dim(r, direction, "support_value");
    if (!all_finite(direction)) throw std::invalid_argument("support_value: non-finite direction");
    switch (r.kind) {
        case RegionKind::interval: {
            double s = 0;
            for (int i = 0; i < r.dim; ++i)
                s += direction[i] > 0 ? direction[i] * r.bounds.hi[i] : direction[i] * r.bounds.lo[i];
            return s;
        }
        case RegionKind::hpoly: {
            std::vector<lp::Constraint> rows;
            for (const auto& f : r.faces) rows.push_back({f.normal, f.offset});
            lp::Result res = lp::maximize(direction, rows, r.hull_box);
            if (!res.ok()) return -std::numeric_limits<double>::infinity();
            return res.value;
        }
        case RegionKind::vpoly: {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& v : r.vertices) best = std::max(best, dot(direction, v));
            return best;
        }
        case RegionKind::ball:
            return dot(direction, r.center) + r.radius * norm(direction);
        default:
            return -std::numeric_limits<double>::infinity();
    }
}

// ---- projection -------------------------------------------------------------

Vec project(const Vec& p, const ConvexRegion& r) {
    if (r.kind == RegionKind::empty) throw std::domain_error("project: empty region");
    check_dim(r, p, "project");
    switch (r.kind) {
        case RegionKind::interval:
            return r.bounds.clamp(p);
        case RegionKind::ball: {
            double d = dist(p, r.center);
            if (d <= r.radius) return p;
            return axpy(r.center, r.radius / d, sub(p, r.center));
        }
        case RegionKind::vpoly:
            return hull::project_onto(p, r.vertices);
        case RegionKind::hpoly:
            return hull::project_onto(p, region_vertices(r));
        default:
            throw std::domain_error("project: unsupported kind");
    }
}

double distance_to_region(const Vec& p, const ConvexRegion& r) {
    if (r.kind == RegionKind::empty) return std::numeric_limits<double>::infinity();
    return dist(p, project(p, r));
}

// ---- normal cones -----------------------------------------------------------

namespace {

// Active-face fast path: for base points on the closure of a polyhedral
// region, the polar of (region - base) is generated by the normals of the
// faces active at base.
std::optional<Cone> cone_from_active_faces(const ConvexRegion& r, const Vec& base) {
    auto faces = region_faces(r);
    if (!faces) return std::nullopt;
    std::vector<Vec> active;
    for (const auto& f : *faces) {
        double margin = f.offset - dot(f.normal, base);
        double sc = kGeomTol * face_scale(f, base);
        if (margin < -sc) return std::nullopt;  // base outside the closure
        if (margin <= sc) active.push_back(f.normal);
    }
    if (active.empty()) return Cone::zero(r.dim);
    return Cone::from_rays(active, r.dim);
}

Cone ball_normal_cone(const ConvexRegion& r, const Vec& base) {
    const int n = r.dim;
    Vec a = sub(r.center, base);
    double na = norm(a);
    if (na + r.radius < 1e-13) return Cone::full(n);  // region is the single point base
    if (n == 1)
        return polar_cone_1d({Vec{a[0] - r.radius}, Vec{a[0] + r.radius}});
    if (na < r.radius - kExactTol) return Cone::zero(n);
    Vec ahat = scale(a, 1.0 / na);
    if (std::fabs(na - r.radius) <= kExactTol)
        return Cone::from_rays({scale(ahat, -1.0)}, n);
    double alpha = std::acos(std::clamp(-r.radius / na, -1.0, 1.0));
    if (n == 2) {
        return Cone::from_rays({rotate2(ahat, alpha), rotate2(ahat, -alpha)}, 2);
    }
    // dim >= 3: the exact cone is circular; emit an inner polyhedral
    // approximation whose generators all lie on the true cone boundary.
    std::vector<Vec> basis;
    for (int i = 0; i < n && static_cast<int>(basis.size()) < n - 1; ++i) {
        Vec v = unit_axis(n, i);
        v = axpy(v, -dot(v, ahat), ahat);
        for (const auto& b : basis) v = axpy(v, -dot(v, b), b);
        if (norm(v) > 1e-8) basis.push_back(normalized(v));
    }
    const int M = 16;
    Rng rng(20240901ull);
    std::vector<Vec> rays;
    for (int k = 0; k < M; ++k) {
        Vec t(n, 0.0);
        if (n == 3) {
            double ang = 2.0 * M_PI * k / M;
            t = axpy(scale(basis[0], std::cos(ang)), std::sin(ang), basis[1]);
        } else {
            Vec coef(basis.size());
            for (auto& c : coef) c = rng.uniform(-1.0, 1.0);
            for (std::size_t i = 0; i < basis.size(); ++i) t = axpy(t, coef[i], basis[i]);
            if (norm(t) < 1e-9) continue;
            t = normalized(t);
        }
        rays.push_back(axpy(scale(ahat, std::cos(alpha)), std::sin(alpha), t));
    }
    return Cone::from_rays(rays, n);
}

}  // namespace

Cone normal_cone_at(const ConvexRegion& r, const Vec& base) {
    if (static_cast<int>(base.size()) != r.dim && r.kind != RegionKind::empty)
        throw std::invalid_argument("normal_cone_at: dimension mismatch");
    if (!all_finite(base)) throw std::invalid_argument("normal_cone_at: non-finite base");
    switch (r.kind) {
        case RegionKind::empty:
            return Cone::full(r.dim == 0 ? static_cast<int>(base.size()) : r.dim);
        case RegionKind::ball:
            return ball_normal_cone(r, base);
        default: {
            if (auto fast = cone_from_active_faces(r, base)) return *fast;
            std::vector<Vec> verts = region_vertices(r);
            std::vector<Vec> diffs;
            diffs.reserve(verts.size());
            for (const auto& v : verts) diffs.push_back(sub(v, base));
            return polar_cone_of_diffs(diffs, r.dim);
        }
    }
}

// ---- vertices / faces -------------------------------------------------------

std::vector<Vec> region_vertices(const ConvexRegion& r) {
    switch (r.kind) {
        case RegionKind::empty:
            return {};
        case RegionKind::interval: {
            if (r.dim > 16) throw std::invalid_argument("region_vertices: dimension too large");
            std::vector<Vec> out;
            const int n = r.dim;
            for (int mask = 0; mask < (1 << n); ++mask) {
                Vec v(n);
                for (int i = 0; i < n; ++i)
                    v[i] = (mask >> i) & 1 ? r.bounds.hi[i] : r.bounds.lo[i];
                bool dup = false;
                for (const auto& w : out)
                    if (dist(w, v) < 1e-14) dup = true;
                if (!dup) out.push_back(v);
            }
            return out;
        }
        case RegionKind::vpoly:
            return r.vertices;
        case RegionKind::hpoly: {
            if (r.dim == 1) return h_to_v_1d(r.faces, r.hull_box);
            if (r.dim == 2) return h_to_v_2d(r.faces, r.hull_box);
            if (r.dim <= 3) return vertices_by_subsets(r.faces, r.hull_box);
            throw std::invalid_argument("region_vertices: H-polytope above dim 3");
        }
        default:
            throw std::invalid_argument("region_vertices: ball has no vertex form");
    }
}

std::optional<std::vector<Halfspace>> region_faces(const ConvexRegion& r) {
    switch (r.kind) {
        case RegionKind::interval: {
            std::vector<Halfspace> out;
            for (int i = 0; i < r.dim; ++i) {
                out.push_back({unit_axis(r.dim, i, -1.0), -r.bounds.lo[i], r.lo_strict[i] != 0});
                out.push_back({unit_axis(r.dim, i, 1.0), r.bounds.hi[i], r.hi_strict[i] != 0});
            }
            return out;
        }
        case RegionKind::hpoly: {
            std::vector<Halfspace> out = r.faces;
            for (int i = 0; i < r.dim; ++i) {
                out.push_back({unit_axis(r.dim, i, 1.0), r.hull_box.hi[i], false});
                out.push_back({unit_axis(r.dim, i, -1.0), -r.hull_box.lo[i], false});
            }
            return out;
        }
        case RegionKind::vpoly:
            if (r.dim == 1) {
                double lo = r.vertices[0][0], hi = lo;
                for (const auto& v : r.vertices) {
                    lo = std::min(lo, v[0]);
                    hi = std::max(hi, v[0]);
                }
                return std::vector<Halfspace>{{Vec{1.0}, hi, false}, {Vec{-1.0}, -lo, false}};
            }
            if (r.dim == 2) return v_to_h_2d(r.vertices);
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

Box region_bbox(const ConvexRegion& r) {
    switch (r.kind) {
        case RegionKind::interval:
            return r.bounds;
        case RegionKind::hpoly:
            return r.hull_box;
        case RegionKind::vpoly:
            return bbox_of_points(r.vertices);
        case RegionKind::ball: {
            Vec lo = r.center, hi = r.center;
            for (int i = 0; i < r.dim; ++i) {
                lo[i] -= r.radius;
                hi[i] += r.radius;
            }
            return Box(lo, hi);
        }
        default:
            return Box(Vec(r.dim, 0.0), Vec(r.dim, 0.0));
    }
}

// ---- disjointness -----------------------------------------------------------

namespace {

DisjointVerdict overlap(Vec witness, const std::string& method) {
    DisjointVerdict v;
    v.disjoint = false;
    v.method = method;
    v.witness = std::move(witness);
    return v;
}

DisjointVerdict separated(const std::string& method, double resolution = 0) {
    DisjointVerdict v;
    v.disjoint = true;
    v.method = method;
    v.resolution = resolution;
    return v;
}

DisjointVerdict sampled_verdict(const ConvexRegion& a, const ConvexRegion& b, double tol,
                                int grid) {
    Box ba = region_bbox(a), bb = region_bbox(b);
    Vec lo(a.dim), hi(a.dim);
    for (int i = 0; i < a.dim; ++i) {
        lo[i] = std::max(ba.lo[i], bb.lo[i]);
        hi[i] = std::min(ba.hi[i], bb.hi[i]);
        if (lo[i] > hi[i]) return separated("sampling", 0);
    }
    double spacing = 0;
    for (int i = 0; i < a.dim; ++i)
        spacing = std::max(spacing, (hi[i] - lo[i]) / std::max(1, grid - 1));
    std::vector<int> idx(a.dim, 0);
    for (;;) {
        Vec p(a.dim);
        for (int i = 0; i < a.dim; ++i)
            p[i] = grid == 1 ? lo[i] : lo[i] + (hi[i] - lo[i]) * idx[i] / (grid - 1);
        if (region_contains(a, p, tol) && region_contains(b, p, tol))
            return overlap(p, "sampling");
        int i = a.dim - 1;
        while (i >= 0 && ++idx[i] == grid) idx[i--] = 0;
        if (i < 0) break;
    }
    return separated("sampling", spacing);
}

DisjointVerdict polyhedral_disjoint(const ConvexRegion& a, const ConvexRegion& b, double tol) {
    const int n = a.dim;
    Box ba = region_bbox(a), bb = region_bbox(b);
    Vec lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        lo[i] = std::max(ba.lo[i], bb.lo[i]) - 1e-9;
        hi[i] = std::min(ba.hi[i], bb.hi[i]) + 1e-9;
        if (lo[i] > hi[i]) return separated("lp");
    }
    auto fa = region_faces(a);
    auto fb = region_faces(b);

    // Variables: x (n), delta (1), then hull coefficients for any V-polytope
    // side lacking a face form. Maximize the minimum slack delta over all
    // strict faces; an overlap must achieve delta > tol.
    int ka = (!fa && a.kind == RegionKind::vpoly) ? static_cast<int>(a.vertices.size()) : 0;
    int kb = (!fb && b.kind == RegionKind::vpoly) ? static_cast<int>(b.vertices.size()) : 0;
    const int nv = n + 1 + ka + kb;
    std::vector<lp::Constraint> rows;
    auto wide = [&](const Vec& x_part, double dcoef, int coeff_base, const Vec& coeffs) {
        Vec a_full(nv, 0.0);
        for (int i = 0; i < n; ++i) a_full[i] = x_part[i];
        a_full[n] = dcoef;
        for (std::size_t i = 0; i < coeffs.size(); ++i) a_full[coeff_base + i] = coeffs[i];
        return a_full;
    };
    bool any_strict = false;
    auto add_faces = [&](const std::vector<Halfspace>& faces) {
        for (const auto& f : faces) {
            any_strict = any_strict || f.strict;
            rows.push_back({wide(f.normal, f.strict ? 1.0 : 0.0, 0, {}), f.offset});
        }
    };
    if (fa) add_faces(*fa);
    if (fb) add_faces(*fb);
    auto add_hull = [&](const std::vector<Vec>& verts, int base) {
        for (int c = 0; c < n; ++c) {
            Vec row(nv, 0.0);
            row[c] = -1.0;
            for (std::size_t i = 0; i < verts.size(); ++i) row[base + i] = verts[i][c];
            rows.push_back({row, 0.0});
            rows.push_back({scale(row, -1.0), 0.0});
        }
        Vec ones(nv, 0.0);
        for (std::size_t i = 0; i < verts.size(); ++i) ones[base + i] = 1.0;
        rows.push_back({ones, 1.0});
        rows.push_back({scale(ones, -1.0), -1.0});
    };
    if (ka) add_hull(a.vertices, n + 1);
    if (kb) add_hull(b.vertices, n + 1 + ka);

    double dscale = 1.0 + Box(Vec(lo), Vec(hi)).diameter();
    Vec vlo(nv, 0.0), vhi(nv, 1.0);
    for (int i = 0; i < n; ++i) {
        vlo[i] = lo[i];
        vhi[i] = hi[i];
    }
    vlo[n] = -dscale;
    vhi[n] = dscale;
    Vec obj(nv, 0.0);
    obj[n] = -1.0;  // maximize delta
    lp::Result res = lp::solve(obj, rows, Box(vlo, vhi));
    if (!res.ok()) return separated("lp");
    double delta = res.argmin[n];
    if (any_strict && delta <= tol) return separated("lp");
    if (!any_strict && delta < -tol) return separated("lp");  // cannot happen; defensive
    Vec witness(res.argmin.begin(), res.argmin.begin() + n);
    return overlap(witness, "lp");
}

}  // namespace

DisjointVerdict regions_disjoint(const ConvexRegion& a, const ConvexRegion& b, double tol,
                                 int sample_grid) {
    if (a.is_empty() || b.is_empty()) return separated("trivial");
    if (a.dim != b.dim) throw std::invalid_argument("regions_disjoint: dimension mismatch");

    if (a.kind == RegionKind::ball && b.kind == RegionKind::ball) {
        double d = dist(a.center, b.center);
        double margin = a.radius + b.radius - d;
        if (margin <= tol) return separated("ball-exact");
        double t = d < 1e-15 ? 0.0 : a.radius / (a.radius + b.radius);
        return overlap(axpy(a.center, t, sub(b.center, a.center)), "ball-exact");
    }
    if (a.kind == RegionKind::ball || b.kind == RegionKind::ball) {
        const ConvexRegion& ball = a.kind == RegionKind::ball ? a : b;
        const ConvexRegion& other = a.kind == RegionKind::ball ? b : a;
        Vec w = project(ball.center, other);
        double margin = ball.radius - dist(w, ball.center);
        if (margin <= tol) return separated("ball-exact");
        if (region_contains(other, w, tol)) return overlap(w, "ball-exact");
        // the nearest point sits on a strict face; fall back to sampling
        return sampled_verdict(a, b, tol, sample_grid);
    }
    return polyhedral_disjoint(a, b, tol);
}

bool regions_agree(const ConvexRegion& a, const ConvexRegion& b, const Box& domain,
                   int grid_points, double tol) {
    const int n = domain.dim();
    std::vector<Vec> probes;
    if (n == 1) {
        for (int i = 0; i < grid_points; ++i)
            probes.push_back({domain.lo[0] +
                              (domain.hi[0] - domain.lo[0]) * double(i) / (grid_points - 1)});
    } else {
        int per_axis = std::max(2, static_cast<int>(std::round(std::pow(
                                       double(grid_points), 1.0 / n))));
        std::vector<int> idx(n, 0);
        for (;;) {
            Vec p(n);
            for (int i = 0; i < n; ++i)
                p[i] = domain.lo[i] + (domain.hi[i] - domain.lo[i]) * idx[i] / (per_axis - 1);
            probes.push_back(p);
            int i = n - 1;
            while (i >= 0 && ++idx[i] == per_axis) idx[i--] = 0;
            if (i < 0) break;
        }
    }
    for (const ConvexRegion* r : {&a, &b}) {
        if (r->kind == RegionKind::empty || r->kind == RegionKind::ball) continue;
        for (const auto& v : region_vertices(*r)) {
            probes.push_back(v);
            for (int i = 0; i < n; ++i)
                for (double s : {1e-6, -1e-6}) {
                    Vec p = v;
                    p[i] += s;
                    probes.push_back(p);
                }
        }
    }
    for (const auto& p : probes) {
        if (!domain.contains(p, 0.0)) continue;
        if (region_contains(a, p, tol) != region_contains(b, p, tol)) return false;
    }
    return true;
}

// ---- relative ball containment ----------------------------------------------

bool ball_inside_region(const Vec& center, double eps, const ConvexRegion& r,
                        const Box* relative_domain) {
    if (r.kind == RegionKind::empty) return false;
    check_dim(r, center, "ball_inside_region");
    if (eps <= 0) return false;
    if (relative_domain && !relative_domain->contains(center, 1e-12)) return false;

    if (r.kind == RegionKind::ball)
        return dist(center, r.center) + eps <= r.radius + kExactTol;

    auto faces = region_faces(r);
    if (!faces) throw std::invalid_argument("ball_inside_region: unsupported kind");
    for (const auto& f : *faces) {
        if (relative_domain) {
            // faces implied by the domain cannot cut the relative ball
            double dom_sup = 0;
            for (int i = 0; i < r.dim; ++i)
                dom_sup += f.normal[i] > 0 ? f.normal[i] * relative_domain->hi[i]
                                           : f.normal[i] * relative_domain->lo[i];
            if (dom_sup <= f.offset + 1e-12) continue;
        }
        if (dot(f.normal, center) + eps * norm(f.normal) > f.offset + kExactTol) return false;
    }
    return true;
}

}  // namespace gnevi
