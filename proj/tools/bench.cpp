// Serial vs OpenMP comparison for the grid kernels: VI certification sweep
// and brute-force equilibrium scan. Verifies both modes agree before timing.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "gnevi/game.hpp"
#include "gnevi/normal_cone.hpp"
#include "gnevi/parallel.hpp"
#include "gnevi/pipeline.hpp"
#include "gnevi/vi.hpp"

using namespace gnevi;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

GameInstance quadratic_game() {
    GameInstance G;
    for (int nu = 0; nu < 2; ++nu) {
        Player pl;
        pl.own_dim = 1;
        pl.strategy_box = Box({0.0}, {1.0});
        pl.constraint = ConstraintMap::constant(ConvexRegion::segment(0.0, 1.0, false, false));
        UtilityFn u = [](const Vec& own, const Vec& rival) {
            double d = own[0] - rival[0];
            return -d * d;
        };
        pl.preference = from_utility(u, pl.strategy_box, pl.strategy_box);
        G.players.push_back(pl);
    }
    return G;
}

}  // namespace

int main() {
    std::printf("threads available: %d\n\n", par::max_threads());

    {
        PreferenceMap P = fixtures::example_3_1();
        vi::VIProblem prob;
        prob.feasible = ConvexRegion::segment(0.0, 1.0, false, false);
        prob.op = [&P](const Vec& x) { return principal_set(P, x); };
        vi::GridParams gp;
        gp.points_per_axis = 400001;
        gp.tol = 1e-6;

        gp.mode = par::Mode::serial;
        auto t0 = clock_type::now();
        auto serial = solve_vi_grid(prob, gp);
        double ts = seconds_since(t0);

        gp.mode = par::Mode::openmp;
        t0 = clock_type::now();
        auto parallel = solve_vi_grid(prob, gp);
        double tp = seconds_since(t0);

        bool agree = serial.size() == parallel.size();
        for (std::size_t i = 0; agree && i < serial.size(); ++i)
            agree = serial[i].point == parallel[i].point;
        std::printf("vi-grid sweep (%d points): serial %.3fs, openmp %.3fs, speedup %.2fx, %s\n",
                    gp.points_per_axis, ts, tp, ts / tp,
                    agree ? "results identical" : "RESULTS DIFFER");
    }

    {
        GameInstance G = quadratic_game();
        auto t0 = clock_type::now();
        auto serial = brute_force_equilibria(G, 301, par::Mode::serial);
        double ts = seconds_since(t0);
        t0 = clock_type::now();
        auto parallel = brute_force_equilibria(G, 301, par::Mode::openmp);
        double tp = seconds_since(t0);
        bool agree = serial == parallel;
        std::printf("equilibrium scan (301^2 profiles): serial %.3fs, openmp %.3fs, speedup "
                    "%.2fx, %s\n",
                    ts, tp, ts / tp, agree ? "results identical" : "RESULTS DIFFER");
    }

    return 0;
}
