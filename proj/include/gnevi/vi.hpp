#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gnevi/cone.hpp"
#include "gnevi/parallel.hpp"
#include "gnevi/region.hpp"

namespace gnevi::vi {

using SetOperator = std::function<CompactConvexSet(const Vec&)>;
using ConstraintOracle = std::function<ConvexRegion(const Vec&)>;

struct VIProblem {
    SetOperator op;
    ConvexRegion feasible;  // C, polyhedral
};

struct QVIProblem {
    SetOperator op;
    ConstraintOracle constraint;  // K(x), non-empty closed convex values
    Box profile_box;              // ambient bounded box
};

enum class Method { grid, fixed_point };

// A solved point with its chosen operator element and the decision residual.
// Residuals are computed against the max-norm-normalized operator value, so
// verdicts are invariant under positive scaling of the generators (the
// defining inequality is positively homogeneous); `scale` records the factor.
struct SolutionCertificate {
    Vec point;
    Vec multiplier;
    double residual = 0;
    double scale = 1;
    Method method = Method::grid;
    bool verified = false;
    double tol = 0;
    std::string note;
};

struct MultiplierDecision {
    double residual = 0;
    Vec multiplier;
    double scale = 1;
};

// Best achievable min_j <s, v_j - x> over s in the (normalized) operator
// value; the two-level LP of the grid solver. unit_ball values certify with
// multiplier zero.
MultiplierDecision best_multiplier(const CompactConvexSet& T, const Vec& x,
                                   const std::vector<Vec>& feasible_vertices);

struct GridParams {
    int points_per_axis = 101;
    double tol = 1e-6;
    par::Mode mode = par::default_mode();
    bool stop_at_first = false;
};

// Certifies every grid point of C where some element of T(x) passes the
// defining inequality against the vertices of C; lexicographic order.
std::vector<SolutionCertificate> solve_vi_grid(const VIProblem& prob, const GridParams& params);

struct FixedPointParams {
    Vec start;
    double step = 0.1;
    int max_iters = 10000;
    enum class Selection { min_norm, fixed_index };
    Selection selection = Selection::min_norm;
    int fixed_index = 0;
    double tol = 1e-6;
    bool record_trace = false;
};

struct FixedPointOutcome {
    bool converged = false;
    SolutionCertificate certificate;
    int iterations = 0;
    std::vector<Vec> trace;
    std::vector<std::string> events;  // step-size changes and the like
    std::string failure;
};

// Projection iteration x <- proj(x - step * s, K(x)). Convergence never
// claims a solution by itself: the outcome certificate comes from
// verify_solution and can be unverified.
FixedPointOutcome solve_qvi_fixed_point(const QVIProblem& prob, const FixedPointParams& params);

SolutionCertificate verify_solution(const VIProblem& prob, const Vec& x, double tol);
SolutionCertificate verify_solution(const QVIProblem& prob, const Vec& x, double tol);

}  // namespace gnevi::vi
