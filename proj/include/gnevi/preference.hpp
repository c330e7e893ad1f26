#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gnevi/region.hpp"

namespace gnevi {

using UtilityFn = std::function<double(const Vec& own, const Vec& rival)>;

// Map from strategy profiles to convex preferred regions of the own space:
// P(x) or P(x, y) when rival_dim > 0. Values are convex by construction of
// the region kinds; the standing hypothesis x not in P(x, y) is checked by
// the property suites rather than assumed silently.
struct PreferenceMap {
    int own_dim = 1;
    int rival_dim = 0;
    Box domain;        // own-variable box
    Box rival_domain;  // used when rival_dim > 0
    std::function<ConvexRegion(const Vec& own, const Vec& rival)> eval_fn;
    UtilityFn utility;  // set when built from a utility, empty otherwise
    std::string name;
    double fit_tol = 0;  // declared Hausdorff tolerance of n-D fitted regions

    // Throws on out-of-domain x.
    ConvexRegion eval(const Vec& x, const Vec& rival = {}) const;
    bool utility_backed() const { return static_cast<bool>(utility); }
};

class convexity_error : public std::runtime_error {
public:
    convexity_error(std::string msg, Vec anchor, Vec y1, Vec y2)
        : std::runtime_error(std::move(msg)), anchor(std::move(anchor)), y1(std::move(y1)),
          y2(std::move(y2)) {}
    Vec anchor, y1, y2;
};

struct FitParams {
    int scan_cells = 256;     // 1-D contour scan resolution
    int coarse_grid = 20;     // per-axis samples locating an n-D superlevel set
    int directions = 96;      // support directions of the fitted polytope
    int bisect_iters = 60;
    double declared_tol = 1e-3;
};

// Builds x -> {y in domain : u(y, rival) > u(x, rival)}. 1-D values are exact
// intervals with endpoint strictness decided by direct evaluation; n-D values
// are support-sampled H-polytopes with strict faces plus a strict separating
// face through x. Non-interval 1-D contours (a quasiconcavity failure) raise
// convexity_error with the violating triple.
PreferenceMap from_utility(UtilityFn u, Box domain, Box rival_domain = {}, FitParams params = {});

// Samples membership-verified points of a region; deterministic.
std::vector<Vec> sample_region_points(const ConvexRegion& region, int target_count,
                                      double tol = 1e-9);

struct MidpointResolution {
    int w_samples = 25;
    int t_grid = 64;           // t in {0, 1/m, ..., (m-1)/m}
    int radius_grid = 14;      // geometric grid of ball radii / neighborhood radii
    double min_radius = 1e-4;
    bool relative_to_domain = true;  // openness relative to the domain box
};

struct MidpointVerdict {
    bool verified = false;  // verified-at-resolution; otherwise counterexample
    bool vacuous = false;   // P(x) empty
    double t = 0;
    double eps = 0;    // ball radius (lower check)
    double delta = 0;  // neighborhood radius (upper check)
    Vec witness_w;          // hardest sampled preferred point when verified
    Vec counterexample_w;   // exhausted sampled point when not
    MidpointResolution resolution;
};

// For each sampled w in P(x), searches the (t, radius) grids for an open ball
// around t*x + (1-t)*w inside P(x); vacuously verified on empty values.
MidpointVerdict check_lower_midpoint(const PreferenceMap& P, const Vec& x, const Vec& rival = {},
                                     const MidpointResolution& params = {});

// For each sampled w, searches t and a neighborhood radius delta such that
// t*x + (1-t)*w stays preferred under sampled perturbations of x (and of the
// rival point in the parametric variant, with equal radii).
MidpointVerdict check_upper_midpoint(const PreferenceMap& P, const Vec& x, const Vec& rival = {},
                                     const MidpointResolution& params = {});

struct ClassifyReport {
    bool open_valued = false;        // P(x) open relative to the domain box
    bool internal_point_cond = false;
    bool map_lsc = false;
    bool relation_lsc = false;       // openness of P(x) at preferred points
    Vec openness_counterexample;
    Vec lsc_counterexample_target;
    double lsc_counterexample_radius = 0;
    MidpointVerdict lower, upper;
    // material conditionals of the four sufficient conditions
    bool impl_open_lower = true;
    bool impl_internal_lower = true;
    bool impl_lsc_open_upper = true;
    bool impl_lsc_internal_upper = true;
};

ClassifyReport classify_sufficient_conditions(const PreferenceMap& P, const Vec& x,
                                              const Vec& rival = {},
                                              const MidpointResolution& params = {});

bool irreflexive_at(const PreferenceMap& P, const Vec& x, const Vec& rival = {},
                    double tol = 1e-9);

namespace fixtures {
PreferenceMap example_3_1();
PreferenceMap example_3_2();
PreferenceMap by_name(const std::string& name);
std::vector<std::string> names();
}  // namespace fixtures

}  // namespace gnevi
