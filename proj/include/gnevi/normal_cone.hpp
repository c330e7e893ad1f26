#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gnevi/cone.hpp"
#include "gnevi/preference.hpp"

namespace gnevi {

class degenerate_cone_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class property_violation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Polar of P(x, y) - {x}, anchored at x whether or not x belongs to the
// value; the whole dual space on empty values.
Cone normal_operator(const PreferenceMap& P, const Vec& x, const Vec& rival = {});

// Same operator with an optional memoizing cache.
class NormalConeOperator {
public:
    enum class CachePolicy { none, memoize };
    explicit NormalConeOperator(PreferenceMap P, CachePolicy policy = CachePolicy::none)
        : P_(std::move(P)), policy_(policy) {}
    Cone eval(const Vec& x, const Vec& rival = {}) const;
    const PreferenceMap& source() const { return P_; }

private:
    PreferenceMap P_;
    CachePolicy policy_;
    mutable std::map<std::pair<Vec, Vec>, Cone> cache_;
};

// Extreme rays of a finitely generated cone (redundant generators dropped).
std::vector<Vec> extreme_rays(const Cone& cone);

// Principal operator value: the unit ball on empty preference values,
// otherwise the convex hull of the normal cone's extreme rays normalized to
// the unit sphere. Throws degenerate_cone_error when the cone collapses to
// {0} (a hypothesis violation upstream).
CompactConvexSet principal_set(const PreferenceMap& P, const Vec& x, const Vec& rival = {});

// Local cap data: a preferred point, a convex-combination parameter and a
// radius such that the ball of radius 2*eps around t*x + (1-t)*w stays
// preferred throughout an eps-neighborhood of the anchor, plus the slicing
// hyperplane {s : <s, plane_normal> = eps} with plane_normal =
// (1-t)(anchor_x - w).
struct CapWitness {
    Vec anchor_x, anchor_rival;
    Vec w;
    double t = 0;
    double eps = 0;
    Vec plane_normal;
};

struct CapSearchParams {
    int w_candidates = 9;
    int t_grid = 16;
    int radius_grid = 12;
    double min_radius = 1e-4;
};

struct CapSearchResult {
    bool found = false;
    CapWitness witness;
    std::string reason;  // distinguishes "not found at resolution" from errors
};

// Searches (w, t, eps) grids for a witness with maximal eps. Throws
// std::domain_error when P(anchor) is empty.
CapSearchResult find_cap_witness(const PreferenceMap& P, const Vec& anchor_x,
                                 const Vec& anchor_rival = {}, const CapSearchParams& params = {});

// The slice N_P(x, y) cut by the witness hyperplane, as a bounded polytope in
// the dual space. Throws std::domain_error outside the witness neighborhood
// and property_violation when the slice is empty or unbounded.
ConvexRegion cap_slice(const CapWitness& witness, const PreferenceMap& P, const Vec& x,
                       const Vec& rival = {});

// Finite partition-of-unity surrogate: hat-weighted Minkowski blend of cap
// slices over a finite anchor set covering (x, y).
CompactConvexSet blend_cap_slices(const std::vector<CapWitness>& witnesses,
                                  const PreferenceMap& P, const Vec& x, const Vec& rival = {});

enum class NormalProperty : int {
    nonzero_normal,     // a nonzero element exists whenever hypotheses hold
    trivial_lineality,  // N and -N meet only in 0
    closed_graph,       // finite-dimensional surrogate along convergent sequences
    strict_negativity,  // <s, w - x> < 0 for nonzero s in the cone, w preferred
};

struct PropertySamples {
    std::vector<std::pair<Vec, Vec>> anchors;  // (x, rival) pairs; rival may be empty
    int w_per_anchor = 7;
    int sequences_per_anchor = 8;
    double sequence_tol = 1e-6;
    MidpointResolution midpoint;
};

struct PropertyCheckReport {
    NormalProperty which = NormalProperty::nonzero_normal;
    int checked = 0;
    int hypothesis_filtered = 0;
    int violations = 0;
    std::vector<std::string> notes;
    bool pass() const { return violations == 0; }
};

PropertyCheckReport check_property(const PreferenceMap& P, NormalProperty which,
                                   const PropertySamples& samples);

}  // namespace gnevi
