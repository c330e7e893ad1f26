#include <doctest.h>

#include "gnevi/hull.hpp"
#include "gnevi/rng.hpp"

using namespace gnevi;

TEST_CASE("min-norm point of a segment straddling the origin") {
    auto r = hull::min_norm_point({{-1.0, 1.0}, {1.0, 1.0}});
    CHECK(r.point[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.point[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("min-norm point inside the hull is the origin") {
    auto r = hull::min_norm_point({{-1.0, -1.0}, {1.0, -1.0}, {0.0, 2.0}});
    CHECK(norm(r.point) < 1e-8);
}

TEST_CASE("projection onto a triangle") {
    std::vector<Vec> tri{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    Vec p = hull::project_onto({1.0, 1.0}, tri);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(hull::distance_to({0.25, 0.25}, tri) < 1e-9);
}

TEST_CASE("hull membership by LP agrees with the distance route") {
    Rng rng(424242ull);
    std::vector<Vec> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
    for (int trial = 0; trial < 40; ++trial) {
        Vec q{rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
        double d = hull::distance_to(q, pts);
        if (d < 1e-7) {
            CHECK(hull::contains_lp(q, pts, 1e-6));
        } else if (d > 1e-4) {
            CHECK(!hull::contains_lp(q, pts, 1e-6));
        }
    }
}

TEST_CASE("coefficients returned by min-norm reproduce the point") {
    Rng rng(7ull);
    std::vector<Vec> pts;
    for (int i = 0; i < 5; ++i) pts.push_back({rng.uniform(0.2, 1.0), rng.uniform(-1.0, 1.0)});
    auto r = hull::min_norm_point(pts);
    Vec rebuilt(2, 0.0);
    double total = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        rebuilt = axpy(rebuilt, r.coeffs[i], pts[i]);
        total += r.coeffs[i];
        CHECK(r.coeffs[i] >= -1e-12);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(dist(rebuilt, r.point) < 1e-9);
}
