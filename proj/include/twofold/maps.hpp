#ifndef TWOFOLD_MAPS_HPP
#define TWOFOLD_MAPS_HPP

#include <array>
#include <complex>
#include <vector>

#include "twofold/flows.hpp"
#include "twofold/model.hpp"

namespace twofold {

/// Image of a Sigma-point under a composed arc map, together with the
/// flight times used. The map is total: negative times are flagged through
/// `valid`, never rejected, because the fixed-line algebra works on the
/// total map and the time filter is applied afterwards.
struct MappedPoint {
    SigmaPoint image;
    std::vector<double> times;
    bool valid = true;  // all times >= 0 (up to eps_tangency)
};

enum class MapKind { Saddle, EllipticRotation, Degenerate };

/// Spectral type of the return map around the origin.
struct MapClassification {
    MapKind kind = MapKind::Degenerate;
    std::array<std::complex<double>, 2> eigenvalues{};
};

/// First return map: the composition of the two fold involutions
/// (lower after upper), with the two flight times recorded.
MappedPoint return_map(const Coefficients& c, const SigmaPoint& p);

/// Upper-arc-first composition, with times (t1, t2); identical to the
/// return map as a point map, kept as the independent closed-form route.
MappedPoint map_x_first(const Coefficients& c, const SigmaPoint& p);

/// Lower-arc-first composition, with times (t3, t4).
MappedPoint map_y_first(const Coefficients& c, const SigmaPoint& p);

/// Linear part of the return map at the origin. Determinant one for every
/// validated system (composition of two involutions).
Mat2 linear_part(const Coefficients& c);

/// Saddle / rotation dichotomy by |c_xy| vs |c_x|, with the closed-form
/// eigenvalue pair. Requires reversibility.
MapClassification classify_return_map(const Coefficients& c);

/// n successive return-map applications. A step with a negative time
/// poisons the validity of every later step.
std::vector<MappedPoint> iterate_return_map(const Coefficients& c, const SigmaPoint& p, int n);

/// Ray slopes alpha in {+1, -1} on which every iterate of the return map
/// fixes the ray pointwise: {+1} iff c_x = c_xy, {-1} iff c_x = -c_xy,
/// empty for simple systems. Requires reversibility.
std::vector<double> period_ray_slopes(const Coefficients& c, int n);

/// Both flight times of the return map strictly positive, i.e.
/// x > 0 and y < (2 c_xy / c_x) x. Requires reversibility.
bool in_return_region(const Coefficients& c, const SigmaPoint& p);

}  // namespace twofold

#endif
