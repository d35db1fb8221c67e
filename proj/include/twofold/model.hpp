#ifndef TWOFOLD_MODEL_HPP
#define TWOFOLD_MODEL_HPP

#include <array>
#include <optional>

#include "twofold/geometry.hpp"

namespace twofold {

/// The four constants of the semi-linear normal form
///   X(x,y,z) = (c_x, c_xy, x),   governing z > 0,
///   Y(x,y,z) = (c_yx, c_y, y),   governing z < 0,
/// with switching plane Sigma = {z = 0}. c_x and c_y are the quadratic
/// contact coefficients of the upper and lower folds; c_xy and c_yx are the
/// cross couplings.
struct Coefficients {
    double c_x = 0.0;
    double c_y = 0.0;
    double c_xy = 0.0;
    double c_yx = 0.0;
};

/// Classification of a Sigma-point by the signs of the normal components
/// (Xh, Yh) = (x, y) of the two fields.
enum class Region {
    SewingPlus,   // x > 0, y > 0: both fields cross upward
    SewingMinus,  // x < 0, y < 0: both fields cross downward
    Sliding,      // x < 0, y > 0: both fields point at Sigma
    Escaping,     // x > 0, y < 0: both fields point away
    FoldX,        // on S_X = {x = 0}, off the origin
    FoldY,        // on S_Y = {y = 0}, off the origin
    Origin,       // the two-fold point itself
};

/// Two-fold type from the visibility of the two folds.
enum class SingularityClass {
    Elliptic,    // both folds invisible: c_x < 0, c_y > 0
    Parabolic,   // one visible, one invisible
    Hyperbolic,  // both visible: c_x > 0, c_y < 0
};

/// Value of the normalized sliding field at a Sigma-point.
struct SlidingValue {
    double u = 0.0;
    double v = 0.0;
};

/// Linearization of the normalized sliding field at the origin, with the
/// two flags derived from it.
struct SlidingLinearization {
    Mat2 matrix;
    bool degenerate = false;        // determinant c_x*c_y - c_xy*c_yx vanishes
    bool regular_two_fold = false;  // hyperbolic and eigenvectors transverse to S_X, S_Y
};

/// Zero set of the normalized sliding field. Non-degenerate systems have
/// only the origin; degenerate ones carry a whole line, whose rays may or
/// may not enter the sliding / escaping regions.
struct PseudoEquilibriumSet {
    bool degenerate = false;
    std::optional<Vec2> line_direction;    // unit spanning direction, when degenerate
    std::array<Region, 2> ray_regions{};   // regions of the +/- rays, when degenerate
    bool meets_sliding_or_escaping = false;
};

/// One-pass summary of all scalar predicates of a system.
struct SystemReport {
    SingularityClass singularity = SingularityClass::Elliptic;
    bool simple = false;
    bool reversible = false;
    bool fixed_line_class = false;  // negative cross coupling and matched products:
                                    // the crossing maps share a fixed line in the sewing region
    bool regular_two_fold = false;
    bool sliding_degenerate = false;
};

/// Checks the fold non-degeneracy |c_x|, |c_y| > eps_fold and returns the
/// coefficients unchanged. Throws DegenerateFoldError naming the offender.
Coefficients validate(const Coefficients& c);

SingularityClass classify_singularity(const Coefficients& c);

/// Non-resonance of the upper fold: c_x != +-c_xy (relative tolerance).
/// Simple systems carry no one-parameter orbit families.
bool is_simple(const Coefficients& c);

/// c_xy = -c_yx and c_x = -c_y, the conditions under which the system
/// anticommutes with the involution (x,y,z) -> (y,x,-z).
bool is_reversible(const Coefficients& c);

/// Elliptic fold signs, negative cross coupling, and c_xy*c_yx = c_x*c_y.
/// Membership implies a degenerate sliding linearization and a line of
/// crossing-map fixed points inside the sewing region.
bool fixed_line_class(const Coefficients& c);

Region classify_point(const Coefficients& c, const SigmaPoint& p);

/// Normalized sliding field (c_x*y - c_yx*x, c_xy*y - c_y*x), smoothly
/// extended to all of Sigma. Orbit-equivalent to the Filippov convex
/// combination on the sliding and escaping regions.
SlidingValue sliding_field(const Coefficients& c, const SigmaPoint& p);

SlidingLinearization sliding_linearization(const Coefficients& c);

PseudoEquilibriumSet pseudo_equilibria(const Coefficients& c);

/// All predicates evaluated together.
SystemReport system_report(const Coefficients& c);

}  // namespace twofold

#endif
