#include <cmath>
#include <random>

#include "doctest.h"
#include "twofold/errors.hpp"
#include "twofold/integrator.hpp"
#include "twofold/model.hpp"
#include "twofold/sampling.hpp"
#include "twofold/tolerances.hpp"

using namespace twofold;

namespace {

Coefficients coeffs(double cx, double cy, double cxy, double cyx) {
    return validate(Coefficients{cx, cy, cxy, cyx});
}

Coefficients random_valid(std::mt19937_64& rng) {
    auto draw = [&](bool away_from_zero) {
        double v = uniform(rng, -3.0, 3.0);
        if (away_from_zero && std::abs(v) < 0.5) v = (v >= 0.0 ? 0.5 : -0.5) + v;
        return v;
    };
    return coeffs(draw(true), draw(true), draw(false), draw(false));
}

// Semi-linear field values, used for the symmetry check at field level.
Point3 upper_field(const Coefficients& c, const Point3& p) {
    FieldSpec spec;
    spec.base = c;
    return eval_field(spec, p, Side::Above);
}

Point3 lower_field(const Coefficients& c, const Point3& p) {
    FieldSpec spec;
    spec.base = c;
    return eval_field(spec, p, Side::Below);
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("validate accepts nonzero folds and rejects degenerate ones") {
    CHECK_NOTHROW(coeffs(-1, 1, 2, -2));
    CHECK_THROWS_AS(coeffs(0, 1, 2, -2), DegenerateFoldError);
    CHECK_THROWS_AS(coeffs(-1e-15, 1, 0, 0), DegenerateFoldError);
    CHECK_THROWS_AS(coeffs(-1, 0, 0, 0), DegenerateFoldError);
}

TEST_CASE("singularity class follows the fold signs") {
    CHECK(classify_singularity(coeffs(-1, 1, 0.3, 0.7)) == SingularityClass::Elliptic);
    CHECK(classify_singularity(coeffs(1, -1, 0.3, 0.7)) == SingularityClass::Hyperbolic);
    CHECK(classify_singularity(coeffs(1, 1, 0.3, 0.7)) == SingularityClass::Parabolic);
    CHECK(classify_singularity(coeffs(-1, -1, 0.3, 0.7)) == SingularityClass::Parabolic);
}

TEST_CASE("simple = fold coefficient differs from cross coupling in modulus") {
    CHECK(is_simple(coeffs(-1, 1, 2, -2)));
    CHECK_FALSE(is_simple(coeffs(-1, 1, -1, 1)));
    CHECK_FALSE(is_simple(coeffs(-1, 1, 1, -1)));
}

TEST_CASE("reversibility relations") {
    CHECK(is_reversible(coeffs(-1, 1, 2, -2)));
    CHECK_FALSE(is_reversible(coeffs(-1, 2, -2, 1)));
    CHECK(is_reversible(coeffs(-3, 3, 0.5, -0.5)));
}

TEST_CASE("fixed-line class membership") {
    CHECK(fixed_line_class(coeffs(-1, 2, -2, 1)));
    CHECK_FALSE(fixed_line_class(coeffs(-1, 1, 2, -2)));   // positive coupling
    CHECK_FALSE(fixed_line_class(coeffs(-1, 2, -2, 1.5))); // product mismatch
}

TEST_CASE("point classification covers every region") {
    const Coefficients c = coeffs(-1, 1, 2, -2);
    CHECK(classify_point(c, {-1, 1}) == Region::Sliding);
    CHECK(classify_point(c, {1, -1}) == Region::Escaping);
    CHECK(classify_point(c, {0, 0}) == Region::Origin);
    CHECK(classify_point(c, {2, 3}) == Region::SewingPlus);
    CHECK(classify_point(c, {-2, -3}) == Region::SewingMinus);
    CHECK(classify_point(c, {0, 5}) == Region::FoldX);
    CHECK(classify_point(c, {3, 0}) == Region::FoldY);

    // Exhaustive and exclusive: recompute from the sign pattern.
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const SigmaPoint p{uniform(rng, -5, 5), uniform(rng, -5, 5)};
        const Region r = classify_point(c, p);
        Region expected;
        if (std::abs(p.x) <= eps_tangency && std::abs(p.y) <= eps_tangency) {
            expected = Region::Origin;
        } else if (std::abs(p.x) <= eps_tangency) {
            expected = Region::FoldX;
        } else if (std::abs(p.y) <= eps_tangency) {
            expected = Region::FoldY;
        } else if (p.x > 0 && p.y > 0) {
            expected = Region::SewingPlus;
        } else if (p.x < 0 && p.y < 0) {
            expected = Region::SewingMinus;
        } else if (p.x < 0) {
            expected = Region::Sliding;
        } else {
            expected = Region::Escaping;
        }
        CHECK(r == expected);
    }
}

TEST_CASE("sliding field values and pseudo equilibrium points") {
    const Coefficients c = coeffs(-1, 2, -2, 1);
    const SlidingValue at_origin = sliding_field(c, {0, 0});
    CHECK(at_origin.u == 0.0);
    CHECK(at_origin.v == 0.0);

    // (-1, 1) lies on the degenerate line: the one-sided fields are parallel.
    const SlidingValue at_line = sliding_field(c, {-1, 1});
    CHECK(at_line.u == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(at_line.v == doctest::Approx(0.0).epsilon(1e-14));
    const Point3 xf = upper_field(c, {-1, 1, 0});
    const Point3 yf = lower_field(c, {-1, 1, 0});
    const double cross_x = xf.y * yf.z - xf.z * yf.y;
    const double cross_y = xf.z * yf.x - xf.x * yf.z;
    const double cross_z = xf.x * yf.y - xf.y * yf.x;
    const double cross = std::sqrt(cross_x * cross_x + cross_y * cross_y + cross_z * cross_z);
    CHECK(cross <= 1e-9 * norm(xf) * norm(yf));

    const Coefficients c2 = coeffs(-1, 1, 2, -2);
    const SlidingValue v = sliding_field(c2, {1, 0});
    CHECK(v.u == doctest::Approx(2.0));
    CHECK(v.v == doctest::Approx(-1.0));
}

TEST_CASE("sliding field vanishes at the origin for random systems") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        const Coefficients c = random_valid(rng);
        const SlidingValue v = sliding_field(c, {0, 0});
        CHECK(v.u == 0.0);
        CHECK(v.v == 0.0);
    }
}

TEST_CASE("sliding linearization determinant flags") {
    CHECK(sliding_linearization(coeffs(-1, 2, -2, 1)).degenerate);
    const SlidingLinearization lin = sliding_linearization(coeffs(-1, 1, 2, -2));
    CHECK_FALSE(lin.degenerate);
    CHECK(lin.matrix.det() == doctest::Approx(3.0));
}

TEST_CASE("anti-diagonal linearization has diagonal eigenvectors") {
    // For (-1, 1, 0, 0) the linearization is [[0, -1], [-1, 0]]: eigenvalues
    // +-1 with eigenvectors along y = -+x, which are transverse to both fold
    // lines, so the two-fold is regular.
    const SlidingLinearization lin = sliding_linearization(coeffs(-1, 1, 0, 0));
    CHECK(lin.matrix.a11 == 0.0);
    CHECK(lin.matrix.a12 == -1.0);
    CHECK(lin.matrix.a21 == -1.0);
    CHECK(lin.matrix.a22 == 0.0);
    const auto lam = eigenvalues(lin.matrix);
    CHECK(lam[0].real() == doctest::Approx(1.0));
    CHECK(lam[1].real() == doctest::Approx(-1.0));
    for (const auto& l : lam) {
        const Vec2 v = real_eigenvector(lin.matrix, l.real());
        CHECK(std::abs(std::abs(v.x) - std::abs(v.y)) <= 1e-12 * norm(v));
        // Residual check against the defining equation.
        const Vec2 av = lin.matrix.apply(v);
        CHECK(std::abs(av.x - l.real() * v.x) <= 1e-12);
        CHECK(std::abs(av.y - l.real() * v.y) <= 1e-12);
    }
    CHECK(lin.regular_two_fold);
}

TEST_CASE("regular two-fold fails on near-axis eigenvectors and on zero eigenvalues") {
    // A vanishing fold coefficient c_y = 1e-10 makes the linearization
    // [[1, 1], [-1e-10, 2]] almost triangular: the eigenvector of the
    // eigenvalue near 1 hugs the x-axis within the angular tolerance.
    const SlidingLinearization near_axis = sliding_linearization(coeffs(1, 1e-10, 2, -1));
    CHECK_FALSE(near_axis.regular_two_fold);

    // Degenerate determinant puts an eigenvalue at zero: not hyperbolic.
    CHECK_FALSE(sliding_linearization(coeffs(-1, 2, -2, 1)).regular_two_fold);
}

TEST_CASE("pseudo equilibria: degenerate kernel line and trivial cases") {
    const PseudoEquilibriumSet line = pseudo_equilibria(coeffs(-1, 2, -2, 1));
    REQUIRE(line.degenerate);
    REQUIRE(line.line_direction.has_value());
    const Vec2 d = *line.line_direction;
    CHECK(std::abs(d.x + d.y) <= 1e-12);  // direction along y = -x
    CHECK(line.meets_sliding_or_escaping);
    bool saw_sliding = false, saw_escaping = false;
    for (const Region r : line.ray_regions) {
        saw_sliding = saw_sliding || r == Region::Sliding;
        saw_escaping = saw_escaping || r == Region::Escaping;
    }
    CHECK(saw_sliding);
    CHECK(saw_escaping);

    CHECK_FALSE(pseudo_equilibria(coeffs(-1, 1, 2, -2)).degenerate);
    CHECK_FALSE(pseudo_equilibria(coeffs(-1, 1, 0, 0)).degenerate);
}

TEST_CASE("kernel-line points have rank-one spans") {
    const Coefficients c = coeffs(-1, 2, -2, 1);
    const PseudoEquilibriumSet set = pseudo_equilibria(c);
    REQUIRE(set.line_direction.has_value());
    for (double s : {-3.0, -1.0, -0.25, 0.5, 1.5, 4.0}) {
        const Point3 p{s * set.line_direction->x, s * set.line_direction->y, 0.0};
        const Point3 xf = upper_field(c, p);
        const Point3 yf = lower_field(c, p);
        const double cx = xf.y * yf.z - xf.z * yf.y;
        const double cy = xf.z * yf.x - xf.x * yf.z;
        const double cz = xf.x * yf.y - xf.y * yf.x;
        const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
        CHECK(cross <= 1e-9 * norm(xf) * norm(yf));
    }
}

TEST_CASE("reversible systems anticommute with the swap involution at field level") {
    std::mt19937_64 rng(23);
    int reversible_seen = 0;
    while (reversible_seen < 20) {
        const double cx = uniform(rng, -3.0, -0.5);
        const double cxy = uniform(rng, -3.0, 3.0);
        const Coefficients c = coeffs(cx, -cx, cxy, -cxy);
        REQUIRE(is_reversible(c));
        reversible_seen++;
        for (int i = 0; i < 100; ++i) {
            Point3 q{uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, 0.05, 2.0)};
            if (uniform01(rng) < 0.5) q.z = -q.z;
            const Point3 zq = (q.z > 0.0) ? upper_field(c, q) : lower_field(c, q);
            const Point3 xi_q{q.y, q.x, -q.z};
            const Point3 z_xiq = (xi_q.z > 0.0) ? upper_field(c, xi_q) : lower_field(c, xi_q);
            // xi(Z(q)) = -Z(xi(q)) componentwise
            CHECK(std::abs(zq.y + z_xiq.x) <= 1e-12);
            CHECK(std::abs(zq.x + z_xiq.y) <= 1e-12);
            CHECK(std::abs(-zq.z + z_xiq.z) <= 1e-12);
        }
    }
}

TEST_CASE("fixed-line class forces a degenerate sliding linearization") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
        const double cx = uniform(rng, -3.0, -0.5);
        const double cy = uniform(rng, 0.5, 3.0);
        const double cxy = uniform(rng, -3.0, -0.5);
        const double cyx = cx * cy / cxy;
        const Coefficients c = coeffs(cx, cy, cxy, cyx);
        REQUIRE(fixed_line_class(c));
        CHECK(sliding_linearization(c).degenerate);
    }
}

TEST_CASE("system report aggregates the predicates") {
    const SystemReport a = system_report(coeffs(-1, 1, 2, -2));
    CHECK(a.singularity == SingularityClass::Elliptic);
    CHECK(a.simple);
    CHECK(a.reversible);
    CHECK_FALSE(a.fixed_line_class);
    CHECK_FALSE(a.sliding_degenerate);

    const SystemReport b = system_report(coeffs(-1, 2, -2, 1));
    CHECK(b.fixed_line_class);
    CHECK(b.sliding_degenerate);
    CHECK_FALSE(b.reversible);
    CHECK_FALSE(b.regular_two_fold);  // zero eigenvalue from the degenerate determinant

    const SystemReport d = system_report(coeffs(-1, 1, -1, 1));
    CHECK_FALSE(d.simple);
    CHECK(d.reversible);
    CHECK(d.fixed_line_class);
}

}  // TEST_SUITE
