#pragma once

#include <vector>

#include "gnevi/linalg.hpp"

namespace gnevi::hull {

struct MinNormResult {
    Vec point;
    Vec coeffs;  // convex coefficients over the input points
};

// Wolfe's algorithm: nearest point to the origin in conv(points).
MinNormResult min_norm_point(const std::vector<Vec>& points);

// Nearest point to p in conv(points).
Vec project_onto(const Vec& p, const std::vector<Vec>& points);

double distance_to(const Vec& p, const std::vector<Vec>& points);

// LP feasibility certificate for p in conv(points).
bool contains_lp(const Vec& p, const std::vector<Vec>& points, double tol);

// Drops duplicates and points expressible as convex combinations of the rest.
std::vector<Vec> prune_to_extreme(std::vector<Vec> points, double tol = 1e-9);

}  // namespace gnevi::hull
