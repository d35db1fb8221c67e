#ifndef TWOFOLD_ORBITS_HPP
#define TWOFOLD_ORBITS_HPP

#include <optional>
#include <string>
#include <vector>

#include "twofold/maps.hpp"

namespace twofold {

enum class OrbitKind {
    Regular,  // both anchors are crossing points and every arc runs forward
    Pseudo,   // an anchor sits in the sliding/escaping regions, or an arc runs backward
};

/// A closed curve assembled from one upper and one lower parabolic arc.
struct ClosedOrbit {
    OrbitKind kind = OrbitKind::Regular;
    double alpha = 0.0;  // slope of the anchor ray {(x, alpha x)}
    SigmaPoint anchor;
    std::vector<Arc> segments;
    double closure_error = 0.0;
    bool has_zero_length_arc = false;  // an anchor on a tangency line
};

/// One-parameter orbit families, reported as ray slopes.
struct FamilyReport {
    std::vector<double> periodic_alphas;
    std::vector<double> pseudo_alphas;
    std::string scenario;  // "no_families" | "periodic_line" | "pseudo_line" | "fixed_line" | ""
    /// Slope of the line of crossing-map fixed points, when the product
    /// condition c_xy c_yx = c_x c_y holds (equal to c_xy / c_x).
    std::optional<double> fixed_line_slope;
    /// Emptiness of the wedge in the escaping region between the two
    /// crossing-map boundary lines; pseudo connections would live there.
    std::optional<bool> pseudo_wedge_empty;
};

/// Everything the CLI serializes for one system.
struct FullReport {
    Coefficients coefficients;
    SystemReport system;
    std::optional<MapClassification> map;  // present for reversible systems
    FamilyReport families;
};

/// Families of a reversible elliptic system: simple systems have none;
/// c_xy = c_x carries the periodic family on the diagonal (alpha = +1);
/// c_xy = -c_x carries the pseudo family on the anti-diagonal (alpha = -1).
FamilyReport find_families_reversible(const Coefficients& c);

/// Families of a general elliptic semi-linear system: the fixed-line family
/// for the matched-product class, and the escaping-wedge emptiness analysis
/// for simple reversible systems.
FamilyReport find_families_semilinear(const Coefficients& c);

/// p lies in the escaping region strictly between the two wedge boundaries
/// (2 c_yx / c_y) y < x < (c_x / (2 c_xy)) y.
bool in_pseudo_wedge(const Coefficients& c, const SigmaPoint& p);

/// Algebraic emptiness of the wedge, by slope comparison. Requires the
/// elliptic fold signs c_x < 0, c_y > 0.
bool pseudo_wedge_empty(const Coefficients& c);

/// Builds the closed orbit through p: the upper arc from p over its flight
/// time and the lower arc from the involution image back. Throws
/// NotClosedError when the curve misses closure at 1e-9.
ClosedOrbit assemble_orbit(const Coefficients& c, const SigmaPoint& p, int samples_per_arc = 64);

/// Deterministic aggregation of every analysis for one coefficient set.
FullReport analyze(const Coefficients& c);

}  // namespace twofold

#endif
