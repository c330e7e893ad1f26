#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gnevi/cone.hpp"
#include "gnevi/linalg.hpp"

namespace gnevi {

enum class RegionKind : std::uint8_t { empty, interval, hpoly, vpoly, ball };

// normal·x <= offset; strict faces exclude their boundary.
struct Halfspace {
    Vec normal;
    double offset = 0;
    bool strict = false;
};

// A bounded convex subset of R^n in one of five shapes. Open boundary pieces
// are carried as strictness flags per face/endpoint; closures drop them.
// Interval products and H-polytopes support strict faces; V-polytopes and
// balls are closed.
struct ConvexRegion {
    RegionKind kind = RegionKind::empty;
    int dim = 0;

    // interval
    Box bounds;
    std::vector<std::uint8_t> lo_strict, hi_strict;

    // hpoly: faces plus a bounding box whose sides act as closed constraints
    std::vector<Halfspace> faces;
    Box hull_box;

    // vpoly
    std::vector<Vec> vertices;

    // ball
    Vec center;
    double radius = 0;

    bool is_empty() const { return kind == RegionKind::empty; }

    static ConvexRegion empty_region(int dim);
    // Degenerate bounds (lo > hi, or lo == hi across a strict endpoint)
    // collapse to the empty region.
    static ConvexRegion interval_product(Box b, std::vector<std::uint8_t> lo_strict = {},
                                         std::vector<std::uint8_t> hi_strict = {});
    static ConvexRegion segment(double lo, double hi, bool lo_open, bool hi_open);
    static ConvexRegion h_polytope(std::vector<Halfspace> faces, Box bounding);
    static ConvexRegion v_polytope(std::vector<Vec> vertices);
    static ConvexRegion ball_region(Vec center, double radius);
};

// Membership honoring strictness: strict faces require margin > tol, closed
// faces margin >= -tol.
bool region_contains(const ConvexRegion& r, const Vec& p, double tol);

// sup over the closure of <direction, x>; -inf for the empty region.
double support_value(const ConvexRegion& r, const Vec& direction);

// Nearest point of the closure. Throws on the empty region.
Vec project(const Vec& p, const ConvexRegion& r);

double distance_to_region(const Vec& p, const ConvexRegion& r);

// Polar cone of (closure(region) - base): {s : <s, w - base> <= 0 for all w}.
// Full space when the region is empty. The base need not belong to the
// region. Ball regions at dim >= 3 return an inner polyhedral approximation
// (every generator is an exact normal).
Cone normal_cone_at(const ConvexRegion& r, const Vec& base);

struct DisjointVerdict {
    bool disjoint = false;
    std::string method;      // "trivial", "lp", "ball-exact", "sampling"
    double resolution = 0;   // grid spacing when method == "sampling"
    Vec witness;             // a common point when not disjoint
};

// Intersection test at tolerance: an overlap must beat the margin tol to
// count. Exact LP separation for polyhedral pairs; projection plus declared-
// resolution sampling when a ball is involved.
DisjointVerdict regions_disjoint(const ConvexRegion& a, const ConvexRegion& b, double tol,
                                 int sample_grid = 64);

// Vertices of the closure for polyhedral kinds. Throws for balls.
std::vector<Vec> region_vertices(const ConvexRegion& r);

// All faces of the closure including bounding-box sides, for polyhedral
// kinds (V-polytopes convert at dim <= 2).
std::optional<std::vector<Halfspace>> region_faces(const ConvexRegion& r);

Box region_bbox(const ConvexRegion& r);

// Is the open ball B(center, eps), intersected with relative_domain when
// given, contained in the region? Faces implied by the relative domain are
// skipped, which realizes openness relative to the domain box.
bool ball_inside_region(const Vec& center, double eps, const ConvexRegion& r,
                        const Box* relative_domain);

// Two-sided membership agreement on a deterministic probe set: a grid over
// the domain plus both regions' boundary markers and their ±1e-6 offsets.
bool regions_agree(const ConvexRegion& a, const ConvexRegion& b, const Box& domain,
                   int grid_points, double tol);

}  // namespace gnevi
