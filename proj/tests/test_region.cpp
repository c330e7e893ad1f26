#include <doctest.h>

#include <cmath>

#include "gnevi/region.hpp"
#include "gnevi/rng.hpp"
#include "support/oracle.hpp"

using namespace gnevi;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("membership honors endpoint strictness") {
    ConvexRegion r = ConvexRegion::segment(0.25, 1.0, true, false);  // (0.25, 1]
    CHECK(region_contains(r, {0.5}, 1e-9));
    CHECK(!region_contains(r, {0.25}, 1e-9));
    CHECK(region_contains(r, {1.0}, 1e-9));
    CHECK(!region_contains(ConvexRegion::empty_region(1), {0.5}, 1e-9));
    CHECK_THROWS_AS(region_contains(r, {0.5, 0.5}, 1e-9), std::invalid_argument);
}

TEST_CASE("support values: ball closed form against dense sampling") {
    ConvexRegion ball = ConvexRegion::ball_region({1.0, 0.0}, 0.5);
    CHECK(support_value(ball, {1.0, 0.0}) == doctest::Approx(1.5).epsilon(1e-12));
    double sampled = oracle::support_by_sampling(ball, {1.0, 0.0}, 331);
    CHECK(support_value(ball, {1.0, 0.0}) == doctest::Approx(sampled).epsilon(1e-2));

    ConvexRegion seg = ConvexRegion::segment(0.5, 0.75, false, true);  // [0.5, 0.75)
    CHECK(support_value(seg, {1.0}) == doctest::Approx(0.75).epsilon(1e-12));  // sup of closure
    CHECK(support_value(ConvexRegion::empty_region(2), {1.0, 0.0}) ==
          -std::numeric_limits<double>::infinity());
}

TEST_CASE("normal cone of a shifted interval") {
    ConvexRegion r = ConvexRegion::segment(0.25, 1.0, true, false);
    Cone c = normal_cone_at(r, {0.25});
    REQUIRE(c.generators.size() == 1);
    CHECK(c.generators[0][0] == doctest::Approx(-1.0));
    // brute force: every generator must pair nonpositively with region points
    CHECK(oracle::in_polar_by_sampling(r, {0.25}, c.generators[0], 10001));

    CHECK(normal_cone_at(ConvexRegion::empty_region(1), {0.3}).full_space);

    Cone plus = normal_cone_at(ConvexRegion::segment(0.5, 0.75, false, true), {0.75});
    REQUIRE(plus.generators.size() == 1);
    CHECK(plus.generators[0][0] == doctest::Approx(1.0));
}

TEST_CASE("normal cone of a ball from an outside base has the closed-form extreme rays") {
    ConvexRegion ball = ConvexRegion::ball_region({1.0, 0.0}, 0.5);
    Cone c = normal_cone_at(ball, {0.0, 0.0});
    REQUIRE(c.generators.size() == 2);
    // extreme rays at angles +-120 degrees from (1, 0)
    for (const auto& g : c.generators) {
        CHECK(norm(g) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::fabs(std::atan2(g[1], g[0])) == doctest::Approx(2.0 * kPi / 3).epsilon(1e-9));
        // membership in {s : <s,(1,0)> + |s|/2 <= 0}
        CHECK(g[0] + 0.5 * norm(g) <= 1e-12);
    }
    // sampled unit directions agree with the cone test via support
    Rng rng(99001ull);
    for (int i = 0; i < 400; ++i) {
        double ang = rng.uniform(-kPi, kPi);
        Vec s{std::cos(ang), std::sin(ang)};
        bool in_cone = support_value(ball, s) - dot(s, Vec{0.0, 0.0}) <= 1e-12;
        bool closed_form = s[0] + 0.5 <= 1e-12;
        CHECK(in_cone == closed_form);
    }
}

TEST_CASE("projection examples") {
    CHECK(project({2.0, 0.0}, ConvexRegion::ball_region({0.0, 0.0}, 1.0)) ==
          Vec{1.0, 0.0});
    CHECK(project({0.3}, ConvexRegion::segment(0.5, 1.0, false, false))[0] ==
          doctest::Approx(0.5));

    // simplex {x >= 0, x1 + x2 <= 1}: KKT residual of the projection of (1,1)
    ConvexRegion simplex = ConvexRegion::h_polytope({{Vec{1.0, 1.0}, 1.0, false}},
                                                    Box({0.0, 0.0}, {1.0, 1.0}));
    Vec p = project({1.0, 1.0}, simplex);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-9));
    // gradient of the distance must be normal to the active face
    Vec grad = sub(Vec{1.0, 1.0}, p);
    double residual = std::fabs(grad[0] - grad[1]);
    CHECK(residual < 1e-9);

    CHECK_THROWS_AS(project({0.0}, ConvexRegion::empty_region(1)), std::domain_error);
}

TEST_CASE("disjointness examples") {
    ConvexRegion unit = ConvexRegion::segment(0.0, 1.0, false, false);
    CHECK(regions_disjoint(ConvexRegion::empty_region(1), unit, 1e-9).disjoint);

    DisjointVerdict v =
        regions_disjoint(ConvexRegion::segment(0.25, 1.0, true, false), unit, 1e-9);
    CHECK(!v.disjoint);
    CHECK(region_contains(unit, v.witness, 1e-9));

    CHECK(regions_disjoint(ConvexRegion::segment(0.5, 0.75, false, false),
                           ConvexRegion::segment(0.8, 0.9, false, false), 1e-9)
              .disjoint);
}

TEST_CASE("strict faces block measure-zero touching") {
    // (0, 0.5) vs [0.5, 1]: closures touch at 0.5 only, the strict side
    // excludes it
    ConvexRegion a = ConvexRegion::segment(0.0, 0.5, true, true);
    ConvexRegion b = ConvexRegion::segment(0.5, 1.0, false, false);
    CHECK(regions_disjoint(a, b, 1e-9).disjoint);
    // with both sides closed the shared point is a genuine witness
    ConvexRegion ac = ConvexRegion::segment(0.0, 0.5, false, false);
    DisjointVerdict v = regions_disjoint(ac, b, 1e-9);
    CHECK(!v.disjoint);
    CHECK(v.witness[0] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("ball disjointness is exact where projection decides") {
    ConvexRegion ball = ConvexRegion::ball_region({0.5, 0.5}, 0.2);
    ConvexRegion far = ConvexRegion::interval_product(Box({0.8, 0.8}, {1.0, 1.0}));
    DisjointVerdict v = regions_disjoint(ball, far, 1e-9);
    CHECK(v.disjoint);
    CHECK(v.method == "ball-exact");

    ConvexRegion near = ConvexRegion::interval_product(Box({0.55, 0.4}, {1.0, 0.6}));
    DisjointVerdict w = regions_disjoint(ball, near, 1e-9);
    CHECK(!w.disjoint);
    CHECK(region_contains(ball, w.witness, 1e-9));
    CHECK(region_contains(near, w.witness, 1e-9));

    ConvexRegion near_ball = ConvexRegion::ball_region({0.85, 0.5}, 0.2);
    CHECK(!regions_disjoint(ball, near_ball, 1e-9).disjoint);
    ConvexRegion far_ball = ConvexRegion::ball_region({0.95, 0.5}, 0.2);
    CHECK(regions_disjoint(ball, far_ball, 1e-9).disjoint);
}

TEST_CASE("polarity property over random polyhedral instances") {
    Rng rng(77210ull);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        int n = rng.uniform_int(1, 4);
        ConvexRegion region;
        if (rng.next_double() < 0.5) {
            Vec lo(n), hi(n);
            for (int i = 0; i < n; ++i) {
                lo[i] = rng.uniform(-1.0, 0.5);
                hi[i] = lo[i] + rng.uniform(0.1, 1.0);
            }
            region = ConvexRegion::interval_product(Box(lo, hi));
        } else {
            std::vector<Vec> pts;
            int k = rng.uniform_int(n + 1, n + 4);
            for (int j = 0; j < k; ++j) {
                Vec p(n);
                for (auto& v : p) v = rng.uniform(-1.0, 1.0);
                pts.push_back(p);
            }
            region = ConvexRegion::v_polytope(pts);
        }
        Vec base(n);
        for (auto& v : base) v = rng.uniform(-1.5, 1.5);
        Cone cone = normal_cone_at(region, base);
        if (cone.full_space) continue;
        for (const auto& s : cone.generators) {
            ++checked;
            CHECK(support_value(region, s) - dot(s, base) <= 1e-9);
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("projection is nonexpansive on random pairs") {
    Rng rng(5150ull);
    for (int trial = 0; trial < 60; ++trial) {
        int n = rng.uniform_int(1, 3);
        Vec lo(n), hi(n);
        for (int i = 0; i < n; ++i) {
            lo[i] = rng.uniform(-1.0, 0.0);
            hi[i] = lo[i] + rng.uniform(0.2, 1.5);
        }
        ConvexRegion region = ConvexRegion::interval_product(Box(lo, hi));
        Vec p(n), q(n);
        for (auto& v : p) v = rng.uniform(-2.0, 2.0);
        for (auto& v : q) v = rng.uniform(-2.0, 2.0);
        CHECK(dist(project(p, region), project(q, region)) <= dist(p, q) + 1e-9);
    }
}

TEST_CASE("membership implies the support inequality") {
    Rng rng(31337ull);
    std::vector<ConvexRegion> regions;
    regions.push_back(ConvexRegion::segment(0.2, 0.9, true, false));
    regions.push_back(ConvexRegion::ball_region({0.3, 0.3}, 0.25));
    regions.push_back(ConvexRegion::v_polytope({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}));
    for (const auto& region : regions) {
        const int n = region.dim;
        for (int trial = 0; trial < 50; ++trial) {
            Vec p(n), d(n);
            for (auto& v : p) v = rng.uniform(-0.2, 1.2);
            for (auto& v : d) v = rng.uniform(-1.0, 1.0);
            if (!region_contains(region, p, 1e-9)) continue;
            CHECK(dot(d, p) <= support_value(region, d) + 1e-9);
        }
    }
}

TEST_CASE("vertex lists are non-redundant after construction") {
    ConvexRegion r = ConvexRegion::v_polytope(
        {{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.0}, {0.0, 1.0}, {0.25, 0.25}, {1.0, 0.0}});
    CHECK(r.vertices.size() == 3);  // midpoints and duplicates pruned
}

TEST_CASE("ball normal cones at dim 3 are inner approximations of the exact cone") {
    ConvexRegion ball = ConvexRegion::ball_region({1.0, 0.0, 0.0}, 0.5);
    Vec base{0.0, 0.0, 0.0};
    Cone c = normal_cone_at(ball, base);
    REQUIRE(!c.generators.empty());
    for (const auto& g : c.generators) {
        CHECK(norm(g) == doctest::Approx(1.0).epsilon(1e-9));
        // exact membership: <g, center - base> + r|g| <= 0
        CHECK(dot(g, sub(ball.center, base)) + ball.radius * norm(g) <= 1e-9);
        CHECK(support_value(ball, g) - dot(g, base) <= 1e-9);
    }
    // base on the sphere: a single exact ray
    Cone on = normal_cone_at(ball, {0.5, 0.0, 0.0});
    REQUIRE(on.generators.size() == 1);
    CHECK(on.generators[0][0] == doctest::Approx(-1.0));
    // base strictly inside: the cone collapses
    CHECK(normal_cone_at(ball, {1.0, 0.1, 0.0}).is_zero());
}

TEST_CASE("h-polytope factories detect an empty closure") {
    std::vector<Halfspace> faces{{Vec{1.0, 0.0}, -2.0, false}};  // x1 <= -2 in [0,1]^2
    ConvexRegion r = ConvexRegion::h_polytope(faces, Box({0.0, 0.0}, {1.0, 1.0}));
    CHECK(r.is_empty());
}

TEST_CASE("relative ball containment skips domain-implied faces") {
    Box domain({0.0}, {1.0});
    ConvexRegion r = ConvexRegion::segment(0.25, 1.0, true, false);
    // ball around 1.0 pokes out of the domain but stays inside relative to it
    CHECK(ball_inside_region({1.0}, 0.1, r, &domain));
    CHECK(!ball_inside_region({1.0}, 0.1, r, nullptr));
    CHECK(!ball_inside_region({0.25}, 0.01, r, &domain));
    CHECK(ball_inside_region({0.5}, 0.1, r, &domain));
}
