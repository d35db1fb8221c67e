#include "twofold/model.hpp"

#include <cmath>
#include <string>

#include "twofold/errors.hpp"
#include "twofold/tolerances.hpp"

namespace twofold {

Coefficients validate(const Coefficients& c) {
    if (!std::isfinite(c.c_x) || !std::isfinite(c.c_y) || !std::isfinite(c.c_xy) ||
        !std::isfinite(c.c_yx)) {
        throw DegenerateFoldError("coefficients must be finite");
    }
    if (std::abs(c.c_x) <= eps_fold) {
        throw DegenerateFoldError("degenerate fold: |c_x| <= 1e-12");
    }
    if (std::abs(c.c_y) <= eps_fold) {
        throw DegenerateFoldError("degenerate fold: |c_y| <= 1e-12");
    }
    return c;
}

SingularityClass classify_singularity(const Coefficients& c) {
    if (c.c_x < 0.0 && c.c_y > 0.0) return SingularityClass::Elliptic;
    if (c.c_x > 0.0 && c.c_y < 0.0) return SingularityClass::Hyperbolic;
    return SingularityClass::Parabolic;
}

bool is_simple(const Coefficients& c) {
    return !nearly_equal(c.c_x, c.c_xy) && !nearly_equal(c.c_x, -c.c_xy);
}

bool is_reversible(const Coefficients& c) {
    return nearly_equal(c.c_xy, -c.c_yx) && nearly_equal(c.c_x, -c.c_y);
}

bool fixed_line_class(const Coefficients& c) {
    if (!(c.c_x < 0.0 && c.c_xy < 0.0 && c.c_y > 0.0)) return false;
    const double lhs = c.c_xy * c.c_yx;
    const double rhs = c.c_x * c.c_y;
    return std::abs(lhs - rhs) <= eps_eq * std::max(1.0, std::abs(rhs));
}

Region classify_point(const Coefficients&, const SigmaPoint& p) {
    const bool on_sx = nearly_zero(p.x);
    const bool on_sy = nearly_zero(p.y);
    if (on_sx && on_sy) return Region::Origin;
    if (on_sx) return Region::FoldX;
    if (on_sy) return Region::FoldY;
    if (p.x > 0.0 && p.y > 0.0) return Region::SewingPlus;
    if (p.x < 0.0 && p.y < 0.0) return Region::SewingMinus;
    if (p.x < 0.0 && p.y > 0.0) return Region::Sliding;
    return Region::Escaping;
}

SlidingValue sliding_field(const Coefficients& c, const SigmaPoint& p) {
    return {c.c_x * p.y - c.c_yx * p.x, c.c_xy * p.y - c.c_y * p.x};
}

SlidingLinearization sliding_linearization(const Coefficients& c) {
    SlidingLinearization out;
    out.matrix = Mat2{-c.c_yx, c.c_x, -c.c_y, c.c_xy};
    const double det = c.c_x * c.c_y - c.c_xy * c.c_yx;
    out.degenerate = std::abs(det) <= eps_eq * std::max(1.0, std::abs(c.c_x * c.c_y));

    const auto lam = eigenvalues(out.matrix);
    const double scale = std::max({1.0, std::abs(out.matrix.a11), std::abs(out.matrix.a12),
                                   std::abs(out.matrix.a21), std::abs(out.matrix.a22)});
    const bool hyperbolic = std::abs(lam[0].real()) > eps_eq * scale &&
                            std::abs(lam[1].real()) > eps_eq * scale;
    bool transverse = true;
    if (hyperbolic && lam[0].imag() == 0.0) {
        // Real spectrum: each eigenvector must avoid both tangency lines,
        // S_X = {x = 0} (direction (0,1)) and S_Y = {y = 0} (direction (1,0)).
        for (const auto& l : lam) {
            const Vec2 v = real_eigenvector(out.matrix, l.real());
            const double n = norm(v);
            if (n == 0.0) {
                transverse = false;  // scalar matrix: every direction invariant
                break;
            }
            const double sin_to_x_axis = std::abs(v.y) / n;
            const double sin_to_y_axis = std::abs(v.x) / n;
            if (sin_to_x_axis <= eps_angle || sin_to_y_axis <= eps_angle) {
                transverse = false;
                break;
            }
        }
    }
    // A complex pair has no real invariant direction, so transversality holds.
    out.regular_two_fold = hyperbolic && transverse;
    return out;
}

PseudoEquilibriumSet pseudo_equilibria(const Coefficients& c) {
    PseudoEquilibriumSet out;
    const SlidingLinearization lin = sliding_linearization(c);
    out.degenerate = lin.degenerate;
    if (!out.degenerate) return out;

    // Kernel of [[-c_yx, c_x], [-c_y, c_xy]]. The first row gives the
    // direction (c_x, c_yx) whenever it is nonzero; otherwise use the second.
    Vec2 dir{c.c_x, c.c_yx};
    if (norm(dir) <= eps_tangency) dir = Vec2{c.c_xy, c.c_y};
    const double n = norm(dir);
    dir = {dir.x / n, dir.y / n};
    out.line_direction = dir;
    out.ray_regions[0] = classify_point(c, SigmaPoint{dir.x, dir.y});
    out.ray_regions[1] = classify_point(c, SigmaPoint{-dir.x, -dir.y});
    for (const Region r : out.ray_regions) {
        if (r == Region::Sliding || r == Region::Escaping) out.meets_sliding_or_escaping = true;
    }
    return out;
}

SystemReport system_report(const Coefficients& c) {
    SystemReport rep;
    rep.singularity = classify_singularity(c);
    rep.simple = is_simple(c);
    rep.reversible = is_reversible(c);
    rep.fixed_line_class = fixed_line_class(c);
    const SlidingLinearization lin = sliding_linearization(c);
    rep.regular_two_fold = lin.regular_two_fold;
    rep.sliding_degenerate = lin.degenerate;
    return rep;
}

}  // namespace twofold
