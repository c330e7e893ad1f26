#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gnevi/game.hpp"
#include "gnevi/normal_cone.hpp"
#include "gnevi/vi.hpp"

namespace gnevi {

class pipeline_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Block product of the per-player principal operators over strategy profiles.
class ProductOperator {
public:
    explicit ProductOperator(const GameInstance& G) : G_(&G) {}

    // per-player principal sets at the profile, in player order
    std::vector<CompactConvexSet> blocks(const Vec& profile) const;
    int profile_dim() const { return G_->profile_dim(); }
    const GameInstance& game() const { return *G_; }

private:
    const GameInstance* G_;
};

struct PipelineParams {
    int grid_per_axis = 101;
    double tol = 1e-6;
    par::Mode mode = par::default_mode();
    bool stop_at_first = false;
    int hypothesis_anchors = 5;  // sampled anchors for attached verdicts
    MidpointResolution midpoint;
    vi::FixedPointParams fixed_point;  // used when the grid is unavailable
};

struct MaximalPipelineResult {
    std::vector<vi::SolutionCertificate> certificates;
    std::vector<MaximalityReport> maximality;  // parallel to certificates
    bool implication_holds = true;
    std::vector<std::string> hypothesis_notes;  // resolution-stamped verdicts
};

// Solve VI(F, K) for the principal operator of P on a grid, then run every
// verified solution through the maximal-element test. A verified solution
// failing maximality raises pipeline_failure: it would falsify the
// implementation, not the underlying implication.
MaximalPipelineResult maximal_via_vi(const PreferenceMap& P, const ConvexRegion& K,
                                     const PipelineParams& params);

// QVI grid certification over profiles using the block decomposition of the
// product operator (residuals add across blocks). Lexicographic order.
std::vector<vi::SolutionCertificate> solve_qvi_grid(const ProductOperator& F,
                                                    const PipelineParams& params);

// Defining-inequality check of a single profile against the block product
// operator: per-player residuals add across blocks.
vi::SolutionCertificate verify_qvi_point(const ProductOperator& F, const Vec& profile,
                                         double tol);

struct EquilibriumPipelineResult {
    std::vector<vi::SolutionCertificate> certificates;
    std::vector<EquilibriumReport> equilibria;  // parallel to certificates
    bool implication_holds = true;
    bool used_fixed_point = false;
    std::vector<std::string> hypothesis_notes;
};

// Build the product operator, solve the QVI (grid at total dim <= 3, the
// projection iteration otherwise), verify every solution as a game
// equilibrium. Loud failure on a verified QVI solution that is not one.
EquilibriumPipelineResult equilibrium_via_qvi(const GameInstance& G,
                                              const PipelineParams& params);

struct AuditEntry {
    int player = -1;
    std::string hypothesis;
    bool pass = false;
    std::string witness;
};

struct AuditReport {
    std::vector<AuditEntry> entries;
    bool all_pass = true;
};

// Sampled checks of the existence-theorem hypotheses: constraint maps
// (non-empty convex closed values, lsc, bounded range) and preferences
// (irreflexivity, mid-point continuity verdicts).
AuditReport audit_assumptions(const GameInstance& G, int samples = 12,
                              std::uint64_t seed = 7);

}  // namespace gnevi
