#include <doctest.h>

#include <cmath>

#include "gnevi/normal_cone.hpp"
#include "gnevi/rng.hpp"
#include "support/oracle.hpp"

using namespace gnevi;

namespace {

PreferenceMap ball_valued_map() {
    PreferenceMap P;
    P.own_dim = 2;
    P.domain = Box({-1.0, -1.0}, {2.0, 2.0});
    P.name = "ball-valued";
    P.eval_fn = [](const Vec&, const Vec&) {
        return ConvexRegion::ball_region({1.0, 0.0}, 0.5);
    };
    return P;
}

}  // namespace

TEST_CASE("normal operator on the first fixture") {
    PreferenceMap P = fixtures::example_3_1();

    Cone low = normal_operator(P, {0.25});
    REQUIRE(low.generators.size() == 1);
    CHECK(low.generators[0][0] == doctest::Approx(-1.0));
    CHECK(oracle::in_polar_by_sampling(P.eval({0.25}), {0.25}, low.generators[0], 10001));

    CHECK(normal_operator(P, {0.5}).full_space);

    Cone high = normal_operator(P, {0.75});
    REQUIRE(high.generators.size() == 1);
    CHECK(high.generators[0][0] == doctest::Approx(1.0));
    CHECK(oracle::in_polar_by_sampling(P.eval({0.75}), {0.75}, high.generators[0], 10001));
}

TEST_CASE("memoizing operator wrapper returns identical cones") {
    NormalConeOperator op(fixtures::example_3_1(), NormalConeOperator::CachePolicy::memoize);
    Cone a = op.eval({0.25});
    Cone b = op.eval({0.25});
    CHECK(a.generators == b.generators);
    CHECK(a.full_space == b.full_space);
}

TEST_CASE("principal operator three-case table on the first fixture") {
    PreferenceMap P = fixtures::example_3_1();
    for (int i = 0; i < 1000; ++i) {
        double x = double(i) / 999.0;
        CompactConvexSet F = principal_set(P, {x});
        CAPTURE(x);
        if (std::fabs(x - 0.5) < 1e-12) {
            CHECK(F.unit_ball);
        } else if (x < 0.5) {
            REQUIRE(F.generators.size() == 1);
            CHECK(F.generators[0][0] == doctest::Approx(-1.0));
        } else {
            REQUIRE(F.generators.size() == 1);
            CHECK(F.generators[0][0] == doctest::Approx(1.0));
        }
    }
    CHECK(principal_set(P, {0.5}).unit_ball);
}

TEST_CASE("principal operator on a ball value is the chord of the extreme rays") {
    PreferenceMap P = ball_valued_map();
    CompactConvexSet F = principal_set(P, {0.0, 0.0});
    REQUIRE(F.generators.size() == 2);
    for (const auto& g : F.generators) {
        CHECK(norm(g) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::fabs(std::atan2(g[1], g[0])) ==
              doctest::Approx(2.0 * std::acos(-1.0) / 3).epsilon(1e-9));
    }
}

TEST_CASE("principal operator invariants: unit generators inside the polar") {
    PreferenceMap P = fixtures::example_3_1();
    for (double x : {0.1, 0.3, 0.6, 0.8, 1.0}) {
        CompactConvexSet F = principal_set(P, {x});
        if (F.unit_ball) continue;
        ConvexRegion value = P.eval({x});
        for (const auto& g : F.generators) {
            CHECK(norm(g) == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(support_value(value, g) - g[0] * x <= 1e-9);
        }
    }
}

TEST_CASE("cap witness on the first fixture") {
    PreferenceMap P = fixtures::example_3_1();
    CapSearchResult res = find_cap_witness(P, {0.25});
    REQUIRE(res.found);
    CHECK(res.witness.eps > 0);
    CHECK(res.witness.t < 1.0);

    // the containment that defines the witness re-checks directly
    const CapWitness& w = res.witness;
    Vec z = axpy(scale(w.w, 1.0 - w.t), w.t, w.anchor_x);
    for (double dx : {-w.eps, -0.5 * w.eps, 0.0, 0.5 * w.eps, w.eps}) {
        Vec x = P.domain.clamp({0.25 + dx});
        ConvexRegion value = P.eval(x);
        CHECK(ball_inside_region(z, 2.0 * w.eps, value, nullptr));
    }

    // the hand witness for this fixture validates as well: a ball of radius
    // 0.125 around 0.75 stays preferred for anchors near 0.25
    for (double dx : {-0.05, 0.0, 0.05}) {
        CHECK(ball_inside_region({0.75}, 0.125, P.eval({0.25 + dx}), nullptr));
    }

    CHECK_THROWS_AS(find_cap_witness(P, {0.5}), std::domain_error);
}

TEST_CASE("cap witness on the plateau fixture lands in the interior") {
    PreferenceMap Q = fixtures::example_3_2();
    CapSearchResult res = find_cap_witness(Q, {0.8});
    REQUIRE(res.found);
    Vec z = axpy(scale(res.witness.w, 1.0 - res.witness.t), res.witness.t, Vec{0.8});
    CHECK(z[0] > 0.5);
    CHECK(z[0] < 0.75);
}

TEST_CASE("cap slice of a single-ray cone is one point") {
    PreferenceMap P = fixtures::example_3_1();
    CapSearchResult res = find_cap_witness(P, {0.25});
    REQUIRE(res.found);
    const CapWitness& w = res.witness;

    ConvexRegion slice = cap_slice(w, P, {0.25});
    REQUIRE(slice.vertices.size() == 1);
    // cone at 0.25 is {s <= 0}; the slice solves (1-t) s (xbar - w) = eps
    double expected = -w.eps / ((1.0 - w.t) * (w.w[0] - w.anchor_x[0]));
    CHECK(slice.vertices[0][0] == doctest::Approx(expected).epsilon(1e-9));

    CHECK_THROWS_AS(cap_slice(w, P, {0.25 + 2.5 * w.eps}), std::domain_error);
}

TEST_CASE("cap slice of the full-space cone is the hyperplane in the unit box") {
    PreferenceMap P = fixtures::example_3_1();
    CapSearchResult res = find_cap_witness(P, {0.45});
    REQUIRE(res.found);
    if (0.45 + res.witness.eps >= 0.5) {
        // 0.5 (an empty value, full-space cone) lies inside the neighborhood
        ConvexRegion slice = cap_slice(res.witness, P, {0.5});
        CHECK(!slice.is_empty());
    }
}

TEST_CASE("cap locality: slices near the anchor stay non-empty and unit-bounded") {
    PreferenceMap P = fixtures::example_3_1();
    for (double anchor : {0.2, 0.3, 0.75, 0.9}) {
        CapSearchResult res = find_cap_witness(P, {anchor});
        REQUIRE(res.found);
        const CapWitness& w = res.witness;
        for (double f : {-0.9, -0.4, 0.0, 0.4, 0.9}) {
            Vec x = P.domain.clamp({anchor + f * w.eps});
            ConvexRegion slice = cap_slice(w, P, x);
            CHECK(!slice.vertices.empty());
            for (const auto& s : slice.vertices) CHECK(norm(s) <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("blended cap operator stays inside the unit ball and away from zero") {
    PreferenceMap P = fixtures::example_3_1();
    CapSearchResult a = find_cap_witness(P, {0.2});
    CapSearchResult b = find_cap_witness(P, {0.3});
    REQUIRE(a.found);
    REQUIRE(b.found);
    CompactConvexSet blend = blend_cap_slices({a.witness, b.witness}, P, {0.25});
    REQUIRE(!blend.generators.empty());
    for (const auto& g : blend.generators) {
        CHECK(norm(g) <= 1.0 + 1e-9);
        CHECK(g[0] < -1e-6);  // both caps slice the {s <= 0} cone
    }
    CHECK_THROWS_AS(blend_cap_slices({a.witness}, P, {0.9}), std::domain_error);
}

TEST_CASE("property checks on the first fixture") {
    PreferenceMap P = fixtures::example_3_1();
    PropertySamples samples;
    for (double x : {0.1, 0.25, 0.4, 0.6, 0.75, 0.9}) samples.anchors.push_back({{x}, {}});

    PropertyCheckReport nz = check_property(P, NormalProperty::nonzero_normal, samples);
    CHECK(nz.pass());
    CHECK(nz.checked >= 5);

    PropertyCheckReport lin = check_property(P, NormalProperty::trivial_lineality, samples);
    CHECK(lin.pass());
    CHECK(lin.checked >= 5);

    PropertyCheckReport sn = check_property(P, NormalProperty::strict_negativity, samples);
    CHECK(sn.pass());

    PropertyCheckReport cg = check_property(P, NormalProperty::closed_graph, samples);
    CHECK(cg.pass());
    CHECK(cg.checked > 0);
}

TEST_CASE("strict negativity in plain arithmetic") {
    // s = -1 against w = 0.6 anchored at 0.25: <-1, 0.35> = -0.35 < 0
    PreferenceMap P = fixtures::example_3_1();
    Cone c = normal_operator(P, {0.25});
    REQUIRE(c.generators.size() == 1);
    CHECK(dot(c.generators[0], sub(Vec{0.6}, Vec{0.25})) == doctest::Approx(-0.35));
}

TEST_CASE("empty-valued maps are hypothesis-filtered for the lineality check") {
    PreferenceMap E;
    E.own_dim = 1;
    E.domain = Box({0.0}, {1.0});
    E.eval_fn = [](const Vec&, const Vec&) { return ConvexRegion::empty_region(1); };
    PropertySamples samples;
    samples.anchors = {{{0.2}, {}}, {{0.7}, {}}};
    PropertyCheckReport rep = check_property(E, NormalProperty::trivial_lineality, samples);
    CHECK(rep.checked == 0);
    CHECK(rep.hypothesis_filtered == 2);
    CHECK(rep.pass());
}

TEST_CASE("degenerate cone raises through the principal operator") {
    // a value whose closure surrounds the anchor forces the {0} cone
    PreferenceMap bad;
    bad.own_dim = 1;
    bad.domain = Box({0.0}, {1.0});
    bad.eval_fn = [](const Vec&, const Vec&) {
        return ConvexRegion::segment(0.2, 0.8, true, true);
    };
    CHECK_THROWS_AS(principal_set(bad, {0.5}), degenerate_cone_error);
}
