#pragma once

#include <vector>

#include "gnevi/parallel.hpp"
#include "gnevi/preference.hpp"
#include "gnevi/region.hpp"

namespace gnevi {

// Feasible strategy map K_nu : C -> C_nu. Constant regions or boxes with
// affine bounds clipped to the strategy box; the affine kind is closed, lower
// semicontinuous and compact-convex-valued by construction.
struct ConstraintMap {
    enum class Kind { constant, affine_box };
    Kind kind = Kind::constant;

    ConvexRegion constant_value;

    // affine_box: lo(x) = lo_coef x + lo_const, hi likewise, rows per own axis
    std::vector<Vec> lo_coef, hi_coef;
    Vec lo_const, hi_const;
    Box strategy_box;

    static ConstraintMap constant(ConvexRegion region);
    static ConstraintMap affine_box(std::vector<Vec> lo_coef, Vec lo_const,
                                    std::vector<Vec> hi_coef, Vec hi_const, Box strategy_box);

    ConvexRegion value(const Vec& profile) const;
};

struct Player {
    int own_dim = 1;
    Box strategy_box;  // C_nu
    ConstraintMap constraint;
    PreferenceMap preference;  // own_dim matches; rival_dim = sum of the others
};

struct GameInstance {
    std::vector<Player> players;

    int profile_dim() const;
    Box profile_box() const;
    int offset(int player) const;
    Vec own_part(const Vec& profile, int player) const;
    Vec rival_part(const Vec& profile, int player) const;
    Vec assemble(int player, const Vec& own, const Vec& rival) const;
};

struct MaximalityReport {
    bool maximal = false;
    DisjointVerdict disjoint;
    double tol = 0;
};

// Maximal element test: x feasible and P(x) disjoint from K. Feasibility uses
// closed tolerance; an overlap witness must beat tol. Throws when x is
// infeasible.
MaximalityReport is_maximal(const PreferenceMap& P, const ConvexRegion& K, const Vec& x,
                            double tol);

struct EquilibriumReport {
    Vec point;
    std::vector<std::uint8_t> feasible_per_player;
    std::vector<std::uint8_t> disjoint_per_player;
    bool verdict = false;
    double tol = 0;
};

EquilibriumReport is_equilibrium(const GameInstance& G, const Vec& x, double tol);

// All grid profiles whose equilibrium verdict holds at tolerance 1.5x the
// grid spacing, in lexicographic order. Total dimension <= 3.
std::vector<Vec> brute_force_equilibria(const GameInstance& G, int grid_per_axis,
                                        par::Mode mode = par::default_mode());

// Collapses clusters of adjacent verifying grid points (within 1.5x spacing
// in the max norm) to their lexicographically smallest representative.
std::vector<Vec> cluster_representatives(const std::vector<Vec>& points, double spacing);

// Cross-validates disjointness equilibria against grid best responses for
// utility-backed games: u_nu(x) must be within tol of the best feasible
// deviation value for every player.
bool gnep_best_response_check(const GameInstance& G, const Vec& x, int grid_per_axis,
                              double tol = 1e-9);

}  // namespace gnevi
