#include <doctest.h>

#include "gnevi/game.hpp"
#include "gnevi/normal_cone.hpp"
#include "gnevi/parallel.hpp"
#include "gnevi/pipeline.hpp"
#include "gnevi/vi.hpp"

using namespace gnevi;

// The OpenMP kernels fill per-index slots and merge in index order; their
// output must match the serial reference bit for bit.

TEST_CASE("vi grid sweep: serial and openmp results are identical") {
    vi::VIProblem prob;
    prob.feasible = ConvexRegion::segment(0.0, 1.0, false, false);
    PreferenceMap P = fixtures::example_3_1();
    prob.op = [P](const Vec& x) { return principal_set(P, x); };

    vi::GridParams gp;
    gp.points_per_axis = 2001;
    gp.tol = 1e-6;
    gp.mode = par::Mode::serial;
    auto serial = solve_vi_grid(prob, gp);
    gp.mode = par::Mode::openmp;
    auto parallel = solve_vi_grid(prob, gp);

    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].point == parallel[i].point);
        CHECK(serial[i].residual == parallel[i].residual);
        CHECK(serial[i].multiplier == parallel[i].multiplier);
    }
}

TEST_CASE("brute-force equilibrium scan: serial and openmp results are identical") {
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
        pl.preference = from_utility(u, pl.strategy_box, Box({0.0}, {1.0}));
        G.players.push_back(pl);
    }
    auto serial = brute_force_equilibria(G, 41, par::Mode::serial);
    auto parallel = brute_force_equilibria(G, 41, par::Mode::openmp);
    CHECK(serial == parallel);
}

TEST_CASE("qvi grid: serial and openmp results are identical") {
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
        pl.preference = from_utility(u, pl.strategy_box, Box({0.0}, {1.0}));
        G.players.push_back(pl);
    }
    ProductOperator F(G);
    PipelineParams params;
    params.grid_per_axis = 41;
    params.mode = par::Mode::serial;
    auto serial = solve_qvi_grid(F, params);
    params.mode = par::Mode::openmp;
    auto parallel = solve_qvi_grid(F, params);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].point == parallel[i].point);
        CHECK(serial[i].residual == parallel[i].residual);
    }
}

TEST_CASE("early-exit scan returns the first certificate deterministically") {
    vi::VIProblem prob;
    prob.feasible = ConvexRegion::segment(0.0, 1.0, false, false);
    PreferenceMap P = fixtures::example_3_1();
    prob.op = [P](const Vec& x) { return principal_set(P, x); };
    vi::GridParams gp;
    gp.points_per_axis = 2001;
    gp.tol = 1e-6;
    gp.stop_at_first = true;
    gp.mode = par::Mode::openmp;
    auto first = solve_vi_grid(prob, gp);
    REQUIRE(first.size() == 1);
    CHECK(first[0].point[0] == doctest::Approx(0.5));
}
