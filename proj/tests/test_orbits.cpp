#include <cmath>
#include <random>

#include "doctest.h"
#include "twofold/errors.hpp"
#include "twofold/orbits.hpp"
#include "twofold/sampling.hpp"
#include "twofold/tolerances.hpp"

using namespace twofold;

TEST_SUITE("orbits") {

TEST_CASE("reversible families: none / periodic diagonal / pseudo anti-diagonal") {
    const FamilyReport none = find_families_reversible(validate({-1, 1, 2, -2}));
    CHECK(none.periodic_alphas.empty());
    CHECK(none.pseudo_alphas.empty());
    CHECK(none.scenario == "no_families");

    const FamilyReport periodic = find_families_reversible(validate({-1, 1, -1, 1}));
    REQUIRE(periodic.periodic_alphas.size() == 1);
    CHECK(periodic.periodic_alphas[0] == doctest::Approx(1.0));
    CHECK(periodic.pseudo_alphas.empty());

    const FamilyReport pseudo = find_families_reversible(validate({-1, 1, 1, -1}));
    REQUIRE(pseudo.pseudo_alphas.size() == 1);
    CHECK(pseudo.pseudo_alphas[0] == doctest::Approx(-1.0));
    CHECK(pseudo.periodic_alphas.empty());

    CHECK_THROWS_AS(find_families_reversible(validate({-1, 2, -2, 1})), NotReversibleError);
    CHECK_THROWS_AS(find_families_reversible(validate({1, -1, 2, -2})), NotEllipticError);
}

TEST_CASE("semi-linear families: fixed line, wedge analysis, routing") {
    const FamilyReport fixed = find_families_semilinear(validate({-1, 2, -2, 1}));
    REQUIRE(fixed.fixed_line_slope.has_value());
    CHECK(*fixed.fixed_line_slope == doctest::Approx(2.0));
    REQUIRE(fixed.periodic_alphas.size() == 1);
    CHECK(fixed.periodic_alphas[0] == doctest::Approx(2.0));
    CHECK(fixed.scenario == "fixed_line");

    // Non-simple reversible system with positive coupling: neither branch
    // applies here; the reversible finder owns it.
    const FamilyReport routed = find_families_semilinear(validate({-1, 1, 1, -1}));
    CHECK(routed.periodic_alphas.empty());
    CHECK_FALSE(routed.fixed_line_slope.has_value());

    const FamilyReport simple = find_families_semilinear(validate({-1, 1, 2, -2}));
    CHECK(simple.periodic_alphas.empty());
    REQUIRE(simple.pseudo_wedge_empty.has_value());
    CHECK(*simple.pseudo_wedge_empty);
}

TEST_CASE("fixed line points are crossing-map fixed with forward times") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        const double cx = uniform(rng, -3.0, -0.5);
        const double cy = uniform(rng, 0.5, 3.0);
        const double cxy = -uniform(rng, 0.5, 3.0);
        const Coefficients c = validate({cx, cy, cxy, cx * cy / cxy});
        REQUIRE(fixed_line_class(c));
        const FamilyReport rep = find_families_semilinear(c);
        REQUIRE(rep.fixed_line_slope.has_value());
        const double slope = *rep.fixed_line_slope;
        for (int i = 0; i < 10; ++i) {
            const double x = uniform(rng, 0.05, 3.0);
            const MappedPoint up = map_x_first(c, {x, slope * x});
            CHECK(std::abs(up.image.x - x) <= 1e-10 * std::max(1.0, x));
            CHECK(std::abs(up.image.y - slope * x) <= 1e-10 * std::max(1.0, std::abs(slope * x)));
            CHECK(up.times[0] >= 0.0);
            CHECK(up.times[1] >= 0.0);
            CHECK(classify_point(c, {x, slope * x}) == Region::SewingPlus);

            const MappedPoint down = map_y_first(c, {-x, -slope * x});
            CHECK(std::abs(down.image.x + x) <= 1e-10 * std::max(1.0, x));
            CHECK(down.times[0] >= 0.0);
            CHECK(down.times[1] >= 0.0);
            CHECK(classify_point(c, {-x, -slope * x}) == Region::SewingMinus);
        }
    }
}

TEST_CASE("escaping wedge membership and emptiness") {
    // Reversible with matched products: the wedge is empty.
    const Coefficients empty1 = validate({-1, 1, 1, -1});
    CHECK(pseudo_wedge_empty(empty1));
    const Coefficients empty2 = validate({-1, 1, -1, 1});
    CHECK(pseudo_wedge_empty(empty2));

    // A slope configuration with a genuinely nonempty wedge.
    const Coefficients open = validate({-1, 1, 1, 1});
    CHECK_FALSE(pseudo_wedge_empty(open));
    CHECK(in_pseudo_wedge(open, {0.25, -1}));

    CHECK_FALSE(in_pseudo_wedge(open, {-1, 1}));  // not escaping
    CHECK_FALSE(in_pseudo_wedge(open, {0, 0}));   // boundary

    // Grid oracle: emptiness decisions match exhaustive sampling.
    for (const Coefficients& c : {empty1, empty2, open}) {
        int hits = 0;
        for (int i = 0; i < 100; ++i) {
            for (int j = 0; j < 100; ++j) {
                const SigmaPoint p{-10.0 + 20.0 * i / 99.0, -10.0 + 20.0 * j / 99.0};
                if (in_pseudo_wedge(c, p)) hits++;
            }
        }
        CHECK((hits == 0) == pseudo_wedge_empty(c));
    }
}

TEST_CASE("wedge is empty under the symmetry hypotheses") {
    std::mt19937_64 rng(67);
    for (int i = 0; i < 100; ++i) {
        const double r = uniform(rng, 0.5, 3.0);
        const double sign = uniform01(rng) < 0.5 ? 1.0 : -1.0;
        const Coefficients c = validate({-r, r, sign * r, -sign * r});
        REQUIRE(is_reversible(c));
        CHECK(pseudo_wedge_empty(c));
        for (int k = 0; k < 200; ++k) {
            const SigmaPoint p{uniform(rng, -10, 10), uniform(rng, -10, 10)};
            CHECK_FALSE(in_pseudo_wedge(c, p));
        }
    }
}

TEST_CASE("orbit assembly: regular diagonal orbit") {
    const ClosedOrbit orbit = assemble_orbit(validate({-1, 1, -1, 1}), {1, 1});
    CHECK(orbit.kind == OrbitKind::Regular);
    CHECK(orbit.closure_error <= 1e-12);
    CHECK(orbit.alpha == doctest::Approx(1.0));
    REQUIRE(orbit.segments.size() == 2);
    CHECK(orbit.segments[0].field == FieldTag::X);
    CHECK(orbit.segments[1].field == FieldTag::Y);
    CHECK(orbit.segments[0].samples.size() >= 64);
    // Upper arc connects (1,1,0) to (-1,-1,0) through z >= 0.
    CHECK(orbit.segments[0].end.x == doctest::Approx(-1.0));
    CHECK(orbit.segments[0].end.y == doctest::Approx(-1.0));
    for (const Point3& q : orbit.segments[0].samples) CHECK(q.z >= -1e-12);
    for (const Point3& q : orbit.segments[1].samples) CHECK(q.z <= 1e-12);
    CHECK_FALSE(orbit.has_zero_length_arc);
}

TEST_CASE("orbit assembly: pseudo orbit on the anti-diagonal") {
    const ClosedOrbit orbit = assemble_orbit(validate({-1, 1, 1, -1}), {1, -1});
    CHECK(orbit.kind == OrbitKind::Pseudo);
    CHECK(orbit.closure_error <= 1e-12);
    CHECK(orbit.alpha == doctest::Approx(-1.0));
    // One arc runs against time: orientation is not preserved.
    CHECK((orbit.segments[0].duration < 0.0 || orbit.segments[1].duration < 0.0));
}

TEST_CASE("orbit assembly: fixed-line orbit and closure failure") {
    const ClosedOrbit orbit = assemble_orbit(validate({-1, 2, -2, 1}), {1, 2});
    CHECK(orbit.kind == OrbitKind::Regular);
    CHECK(orbit.closure_error <= 1e-12);
    CHECK(orbit.segments[0].duration == doctest::Approx(2.0));
    CHECK(orbit.segments[1].duration == doctest::Approx(2.0));
    CHECK(orbit.segments[0].end.x == doctest::Approx(-1.0));
    CHECK(orbit.segments[0].end.y == doctest::Approx(-2.0));

    CHECK_THROWS_AS(assemble_orbit(validate({-1, 1, 2, -2}), {1, -5}), NotClosedError);
}

TEST_CASE("family soundness: sampled anchors are return-map fixed") {
    const Coefficients c = validate({-1, 1, -1, 1});
    std::mt19937_64 rng(71);
    for (int i = 0; i < 50; ++i) {
        const double x = uniform(rng, 0.02, 4.0);
        const MappedPoint m = return_map(c, {x, x});
        CHECK(std::abs(m.image.x - x) <= 1e-10 * std::max(1.0, x));
        CHECK(std::abs(m.image.y - x) <= 1e-10 * std::max(1.0, x));
        CHECK(m.times[0] >= 0.0);
        CHECK(m.times[1] >= 0.0);
    }
}

TEST_CASE("family completeness: a ray scan finds only the reported slopes") {
    struct Case {
        Coefficients c;
        std::vector<double> expected;
    };
    const std::vector<Case> cases = {
        {validate({-1, 1, -1, 1}), {1.0}},
        {validate({-1, 1, 1, -1}), {-1.0}},
        {validate({-1, 2, -2, 1}), {2.0}},
        {validate({-1, 1, 2, -2}), {}},
    };
    for (const Case& tc : cases) {
        const Mat2 m = linear_part(tc.c);
        std::vector<double> found;
        for (int i = 0; i <= 4000; ++i) {
            const double alpha = -10.0 + 20.0 * i / 4000.0;
            const Vec2 v{1.0, alpha};
            const Vec2 mv = m.apply(v);
            const double residual = std::hypot(mv.x - v.x, mv.y - v.y) / std::hypot(1.0, alpha);
            if (residual <= 1e-6) found.push_back(alpha);
        }
        // Every grid hit sits within one grid cell of a reported slope, and
        // every reported slope is represented.
        const double cell = 20.0 / 4000.0;
        for (double alpha : found) {
            bool near_expected = false;
            for (double e : tc.expected) {
                if (std::abs(alpha - e) <= cell + 1e-9) near_expected = true;
            }
            CHECK(near_expected);
        }
        for (double e : tc.expected) {
            bool represented = false;
            for (double alpha : found) {
                if (std::abs(alpha - e) <= cell + 1e-9) represented = true;
            }
            CHECK(represented);
        }
        if (tc.expected.empty()) CHECK(found.empty());
    }
}

TEST_CASE("aggregate analysis of the three reference systems") {
    const FullReport a = analyze(validate({-1, 1, 2, -2}));
    CHECK(a.system.singularity == SingularityClass::Elliptic);
    CHECK(a.system.simple);
    CHECK(a.system.reversible);
    REQUIRE(a.map.has_value());
    CHECK(a.map->kind == MapKind::Saddle);
    CHECK(a.families.periodic_alphas.empty());
    CHECK(a.families.pseudo_alphas.empty());

    const FullReport b = analyze(validate({-1, 1, -1, 1}));
    CHECK_FALSE(b.system.simple);
    CHECK(b.system.reversible);
    REQUIRE(b.map.has_value());
    CHECK(b.map->kind == MapKind::Degenerate);
    REQUIRE(b.families.periodic_alphas.size() == 1);
    CHECK(b.families.periodic_alphas[0] == doctest::Approx(1.0));

    const FullReport d = analyze(validate({-1, 2, -2, 1}));
    CHECK(d.system.fixed_line_class);
    CHECK(d.system.sliding_degenerate);
    CHECK_FALSE(d.map.has_value());
    REQUIRE(d.families.fixed_line_slope.has_value());
    CHECK(*d.families.fixed_line_slope == doctest::Approx(2.0));
}

}  // TEST_SUITE
