#pragma once

// Randomized desk-scale instance fleet shared by the property tests and the
// acceptance suite. Peaks and feasible-set endpoints land on the evaluation
// lattice so grid certification can match the analytic solutions exactly.

#include <string>
#include <vector>

#include "gnevi/game.hpp"
#include "gnevi/preference.hpp"
#include "gnevi/rng.hpp"

namespace fleet {

using namespace gnevi;

struct SingleAgent {
    PreferenceMap P;
    ConvexRegion K;
    int dim = 1;
    Vec expected_solution;  // analytic maximal element (peak or K-boundary)
    std::string label;
};

inline double lattice(Rng& rng, double lo, double hi, int steps) {
    int k = rng.uniform_int(0, steps);
    return lo + (hi - lo) * double(k) / steps;
}

inline SingleAgent make_1d(Rng& rng, int index) {
    SingleAgent inst;
    double a = lattice(rng, 0.0, 1.0, 20) * 0.3;
    double b = 1.0 - lattice(rng, 0.0, 1.0, 20) * 0.3;
    if (b - a < 0.25) {
        a = 0.0;
        b = 1.0;
    }
    // peak on the 200-step lattice of [a, b] so a 201-point grid hits it
    bool interior_peak = rng.next_double() < 0.7;
    double p;
    if (interior_peak) {
        p = a + (b - a) * rng.uniform_int(20, 180) / 200.0;
        inst.expected_solution = {p};
    } else {
        bool above = rng.next_double() < 0.5;
        p = above ? b + rng.uniform(0.02, 0.2) : a - rng.uniform(0.02, 0.2);
        p = std::clamp(p, 0.0, 1.0);
        if (p == b || p == a) p = above ? b : a;
        inst.expected_solution = {above ? b : a};
    }
    double coef = rng.uniform(0.5, 2.0);
    int q = rng.next_double() < 0.5 ? 1 : 2;
    UtilityFn u = [coef, p, q](const Vec& own, const Vec&) {
        double d = std::fabs(own[0] - p);
        return -coef * (q == 1 ? d : d * d);
    };
    inst.P = from_utility(u, Box({0.0}, {1.0}));
    inst.K = ConvexRegion::segment(a, b, false, false);
    inst.dim = 1;
    inst.label = "1d-" + std::to_string(index);
    return inst;
}

inline SingleAgent make_2d(Rng& rng, int index, int grid_points) {
    SingleAgent inst;
    // K = [0, 1]^2; peak on the grid lattice, strictly interior
    const int steps = grid_points - 1;
    double p1 = rng.uniform_int(steps / 5, 4 * steps / 5) / double(steps);
    double p2 = rng.uniform_int(steps / 5, 4 * steps / 5) / double(steps);
    double a1 = rng.uniform(0.6, 1.6), a2 = rng.uniform(0.6, 1.6);
    double c = rng.uniform(-0.6, 0.6) * std::sqrt(a1 * a2);
    UtilityFn u = [=](const Vec& own, const Vec&) {
        double d1 = own[0] - p1, d2 = own[1] - p2;
        return -(a1 * d1 * d1 + a2 * d2 * d2 + c * d1 * d2);
    };
    FitParams fit;
    fit.directions = 48;  // property-fleet resolution
    inst.P = from_utility(u, Box({0.0, 0.0}, {1.0, 1.0}), {}, fit);
    inst.K = ConvexRegion::interval_product(Box({0.0, 0.0}, {1.0, 1.0}));
    inst.dim = 2;
    inst.expected_solution = {p1, p2};
    inst.label = "2d-" + std::to_string(index);
    return inst;
}

inline std::vector<SingleAgent> single_agent_fleet(std::uint64_t seed, int count_1d, int count_2d,
                                                   int grid_points_2d = 21) {
    std::vector<SingleAgent> out;
    Rng rng = Rng::labeled(seed, "single-agent-fleet");
    for (int i = 0; i < count_1d; ++i) out.push_back(make_1d(rng, i));
    for (int i = 0; i < count_2d; ++i) out.push_back(make_2d(rng, i, grid_points_2d));
    return out;
}

// Two-player games with single-peaked 1-D utilities. Peaks are constants or
// track the rival; constraints are constant boxes or affine boxes feasible at
// the analytic solution.
struct TwoPlayerGame {
    GameInstance G;
    std::string label;
};

inline TwoPlayerGame make_game(Rng& rng, int index, int grid_points) {
    TwoPlayerGame tg;
    const int steps = grid_points - 1;
    for (int nu = 0; nu < 2; ++nu) {
        Player pl;
        pl.own_dim = 1;
        pl.strategy_box = Box({0.0}, {1.0});
        bool tracking = rng.next_double() < 0.5;
        double peak = rng.uniform_int(steps / 5, 4 * steps / 5) / double(steps);
        UtilityFn u;
        if (tracking) {
            u = [](const Vec& own, const Vec& rival) {
                double d = own[0] - rival[0];
                return -d * d;
            };
        } else {
            u = [peak](const Vec& own, const Vec&) {
                double d = own[0] - peak;
                return -d * d;
            };
        }
        pl.preference = from_utility(u, pl.strategy_box, Box({0.0}, {1.0}));
        if (rng.next_double() < 0.3) {
            // K_nu(x) = [alpha * rival, 1] with alpha small enough to stay
            // feasible at the solution
            double alpha = rng.uniform_int(1, 4) / 10.0;
            int rival_axis = nu == 0 ? 1 : 0;
            Vec row(2, 0.0);
            row[rival_axis] = alpha;
            pl.constraint = ConstraintMap::affine_box({row}, {0.0}, {Vec(2, 0.0)}, {1.0},
                                                      pl.strategy_box);
        } else {
            pl.constraint =
                ConstraintMap::constant(ConvexRegion::segment(0.0, 1.0, false, false));
        }
        tg.G.players.push_back(pl);
    }
    tg.label = "game-" + std::to_string(index);
    return tg;
}

inline std::vector<TwoPlayerGame> game_fleet(std::uint64_t seed, int count,
                                             int grid_points = 101) {
    std::vector<TwoPlayerGame> out;
    Rng rng = Rng::labeled(seed, "game-fleet");
    for (int i = 0; i < count; ++i) out.push_back(make_game(rng, i, grid_points));
    return out;
}

}  // namespace fleet
