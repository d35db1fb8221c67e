#ifndef TWOFOLD_FLOWS_HPP
#define TWOFOLD_FLOWS_HPP

#include <vector>

#include "twofold/model.hpp"

namespace twofold {

/// Time of flight of a parabolic arc back to Sigma. Degenerate when the
/// start point lies on the tangency line, in which case t = 0.
struct FlightTime {
    double t = 0.0;
    bool degenerate = false;
};

enum class FieldTag { X, Y, Slide };

/// One labeled piece of an orbit: a parabolic arc of X or Y, or a sliding
/// segment. Negative duration marks a piece traversed against time.
struct Arc {
    FieldTag field = FieldTag::X;
    Point3 start;
    Point3 end;
    double duration = 0.0;
    std::vector<Point3> samples;
};

/// Exact flow of the upper field: (x + c_x t, y + c_xy t, z + x t + c_x t^2 / 2).
Point3 flow_x(const Coefficients& c, const Point3& p, double t);

/// Exact flow of the lower field: (x + c_yx t, y + c_y t, z + y t + c_y t^2 / 2).
Point3 flow_y(const Coefficients& c, const Point3& p, double t);

/// Nonzero root -2 x / c_x of the z-component along the upper flow from a
/// Sigma-point. May be negative; the caller decides physical validity.
FlightTime flight_time_x(const Coefficients& c, const SigmaPoint& p);

/// Mirror: -2 y / c_y along the lower flow.
FlightTime flight_time_y(const Coefficients& c, const SigmaPoint& p);

/// Where the X-parabola through p re-meets Sigma: (-x, y - 2 c_xy x / c_x).
/// A total involution of Sigma fixing S_X pointwise.
SigmaPoint fold_involution_x(const Coefficients& c, const SigmaPoint& p);

/// Mirror involution (x - 2 c_yx y / c_y, -y), fixing S_Y pointwise.
SigmaPoint fold_involution_y(const Coefficients& c, const SigmaPoint& p);

/// Value of the sliding segment through p after time t. The normalized
/// sliding field is linear in the plane, so this is a closed-form matrix
/// exponential (series near the degenerate frequency).
SigmaPoint slide_flow(const Coefficients& c, const SigmaPoint& p, double t);

/// n >= 2 uniformly spaced samples of the chosen flow over [0, t].
Arc sample_arc(const Coefficients& c, FieldTag field, const Point3& p, double t, int n);

}  // namespace twofold

#endif
