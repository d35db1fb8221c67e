#include "twofold/orbits.hpp"

#include <algorithm>
#include <cmath>

#include "twofold/errors.hpp"
#include "twofold/tolerances.hpp"

namespace twofold {

namespace {

void require_elliptic(const Coefficients& c, const char* op) {
    if (classify_singularity(c) != SingularityClass::Elliptic) {
        throw NotEllipticError(std::string(op) + ": requires c_x < 0 and c_y > 0");
    }
}

bool sliding_or_escaping(Region r) {
    return r == Region::Sliding || r == Region::Escaping;
}

}  // namespace

FamilyReport find_families_reversible(const Coefficients& c) {
    if (!is_reversible(c)) {
        throw NotReversibleError("find_families_reversible: requires a reversible system");
    }
    require_elliptic(c, "find_families_reversible");
    FamilyReport rep;
    if (is_simple(c)) {
        rep.scenario = "no_families";
        return rep;
    }
    if (nearly_equal(c.c_xy, c.c_x)) {
        rep.periodic_alphas.push_back(1.0);
        rep.scenario = "periodic_line";
    } else {
        rep.pseudo_alphas.push_back(-1.0);
        rep.scenario = "pseudo_line";
    }
    return rep;
}

FamilyReport find_families_semilinear(const Coefficients& c) {
    require_elliptic(c, "find_families_semilinear");
    FamilyReport rep;
    if (fixed_line_class(c)) {
        // The two crossing maps share the pointwise-fixed line
        // y = (c_xy / c_x) x, inside the sewing region, with nonnegative
        // flight times on both halves.
        rep.fixed_line_slope = c.c_xy / c.c_x;
        rep.periodic_alphas.push_back(*rep.fixed_line_slope);
        rep.scenario = "fixed_line";
        return rep;
    }
    if (is_simple(c) && is_reversible(c)) {
        rep.pseudo_wedge_empty = pseudo_wedge_empty(c);
        rep.scenario = "no_families";
    }
    return rep;
}

bool in_pseudo_wedge(const Coefficients& c, const SigmaPoint& p) {
    if (classify_point(c, p) != Region::Escaping) return false;
    const double lower = (2.0 * c.c_yx / c.c_y) * p.y;
    const double upper = (c.c_x / (2.0 * c.c_xy)) * p.y;
    return lower < p.x && p.x < upper;
}

bool pseudo_wedge_empty(const Coefficients& c) {
    require_elliptic(c, "pseudo_wedge_empty");
    // For y < 0 the wedge needs a positive upper bound (c_x / (2 c_xy)) y,
    // i.e. c_xy > 0 given c_x < 0, and a nonempty slope interval.
    if (!(c.c_xy > 0.0)) return true;
    return !(2.0 * c.c_yx / c.c_y > c.c_x / (2.0 * c.c_xy));
}

ClosedOrbit assemble_orbit(const Coefficients& c, const SigmaPoint& p, int samples_per_arc) {
    samples_per_arc = std::max(samples_per_arc, 64);
    ClosedOrbit orbit;
    orbit.anchor = p;
    orbit.alpha = (p.x != 0.0) ? p.y / p.x : 0.0;

    const FlightTime tx = flight_time_x(c, p);
    const SigmaPoint mid = fold_involution_x(c, p);
    const FlightTime ty = flight_time_y(c, mid);

    const Arc up = sample_arc(c, FieldTag::X, Point3{p.x, p.y, 0.0}, tx.t, samples_per_arc);
    const Arc down = sample_arc(c, FieldTag::Y, Point3{mid.x, mid.y, 0.0}, ty.t, samples_per_arc);
    orbit.closure_error = distance(Point3{p.x, p.y, 0.0}, down.end);
    if (orbit.closure_error > 1e-9) {
        throw NotClosedError("assemble_orbit: curve misses closure by " +
                             std::to_string(orbit.closure_error));
    }
    orbit.segments = {up, down};
    orbit.has_zero_length_arc = tx.degenerate || ty.degenerate;

    const Region ra = classify_point(c, p);
    const Region rb = classify_point(c, mid);
    const bool forward = tx.t >= -eps_tangency && ty.t >= -eps_tangency;
    if (sliding_or_escaping(ra) || sliding_or_escaping(rb) || !forward) {
        orbit.kind = OrbitKind::Pseudo;
    } else {
        orbit.kind = OrbitKind::Regular;
    }
    return orbit;
}

FullReport analyze(const Coefficients& c) {
    FullReport rep;
    rep.coefficients = c;
    rep.system = system_report(c);
    if (rep.system.reversible) rep.map = classify_return_map(c);

    const bool elliptic = rep.system.singularity == SingularityClass::Elliptic;
    if (elliptic) {
        if (rep.system.reversible) {
            rep.families = find_families_reversible(c);
        }
        const FamilyReport semi = find_families_semilinear(c);
        for (const double a : semi.periodic_alphas) {
            bool dup = false;
            for (const double b : rep.families.periodic_alphas) {
                if (nearly_equal(a, b)) dup = true;
            }
            if (!dup) rep.families.periodic_alphas.push_back(a);
        }
        rep.families.fixed_line_slope = semi.fixed_line_slope;
        rep.families.pseudo_wedge_empty = semi.pseudo_wedge_empty;
        if (rep.families.scenario.empty()) rep.families.scenario = semi.scenario;
        std::sort(rep.families.periodic_alphas.begin(), rep.families.periodic_alphas.end());
        std::sort(rep.families.pseudo_alphas.begin(), rep.families.pseudo_alphas.end());
    }
    return rep;
}

}  // namespace twofold
