#include "twofold/maps.hpp"

#include <cmath>

#include "twofold/errors.hpp"
#include "twofold/tolerances.hpp"

namespace twofold {

namespace {

bool times_valid(const std::vector<double>& times) {
    for (const double t : times) {
        if (t < -eps_tangency) return false;
    }
    return true;
}

void require_reversible(const Coefficients& c, const char* op) {
    if (!is_reversible(c)) {
        throw NotReversibleError(std::string(op) + ": requires c_xy = -c_yx and c_x = -c_y");
    }
}

}  // namespace

MappedPoint return_map(const Coefficients& c, const SigmaPoint& p) {
    MappedPoint out;
    const FlightTime t1 = flight_time_x(c, p);
    const SigmaPoint mid = fold_involution_x(c, p);
    const FlightTime t2 = flight_time_y(c, mid);
    out.image = fold_involution_y(c, mid);
    out.times = {t1.t, t2.t};
    out.valid = times_valid(out.times);
    return out;
}

MappedPoint map_x_first(const Coefficients& c, const SigmaPoint& p) {
    MappedPoint out;
    const double k = 4.0 * c.c_xy * c.c_yx / (c.c_x * c.c_y);
    out.image = {(-1.0 + k) * p.x - (2.0 * c.c_yx / c.c_y) * p.y,
                 (2.0 * c.c_xy / c.c_x) * p.x - p.y};
    const double t1 = -2.0 * p.x / c.c_x;
    const double t2 = -(2.0 / c.c_y) * (-(2.0 * c.c_xy / c.c_x) * p.x + p.y);
    out.times = {t1, t2};
    out.valid = times_valid(out.times);
    return out;
}

MappedPoint map_y_first(const Coefficients& c, const SigmaPoint& p) {
    MappedPoint out;
    const double k = 4.0 * c.c_xy * c.c_yx / (c.c_x * c.c_y);
    out.image = {-p.x + (2.0 * c.c_yx / c.c_y) * p.y,
                 -(2.0 * c.c_xy / c.c_x) * p.x + (k - 1.0) * p.y};
    const double t3 = -2.0 * p.y / c.c_y;
    const double t4 = -(2.0 / c.c_x) * (p.x - (2.0 * c.c_yx / c.c_y) * p.y);
    out.times = {t3, t4};
    out.valid = times_valid(out.times);
    return out;
}

Mat2 linear_part(const Coefficients& c) {
    const double k = 4.0 * c.c_xy * c.c_yx / (c.c_x * c.c_y);
    return {k - 1.0, -2.0 * c.c_yx / c.c_y, 2.0 * c.c_xy / c.c_x, -1.0};
}

MapClassification classify_return_map(const Coefficients& c) {
    require_reversible(c, "classify_return_map");
    MapClassification out;
    const double cx2 = c.c_x * c.c_x;
    const double radicand = c.c_xy * c.c_xy * (c.c_xy - c.c_x) * (c.c_xy + c.c_x);
    const std::complex<double> root = std::sqrt(std::complex<double>(radicand, 0.0));
    out.eigenvalues[0] = -1.0 + 2.0 * (c.c_xy * c.c_xy + root) / cx2;
    out.eigenvalues[1] = -1.0 + 2.0 * (c.c_xy * c.c_xy - root) / cx2;
    const double mxy = std::abs(c.c_xy);
    const double mx = std::abs(c.c_x);
    if (nearly_equal(mxy, mx)) {
        out.kind = MapKind::Degenerate;
    } else if (mxy > mx) {
        out.kind = MapKind::Saddle;
    } else {
        out.kind = MapKind::EllipticRotation;
    }
    return out;
}

std::vector<MappedPoint> iterate_return_map(const Coefficients& c, const SigmaPoint& p, int n) {
    if (n < 1) throw std::invalid_argument("iterate_return_map: n >= 1");
    std::vector<MappedPoint> out;
    out.reserve(static_cast<size_t>(n));
    SigmaPoint cur = p;
    bool poisoned = false;
    for (int i = 0; i < n; ++i) {
        MappedPoint step = return_map(c, cur);
        poisoned = poisoned || !step.valid;
        step.valid = !poisoned;
        cur = step.image;
        out.push_back(std::move(step));
    }
    return out;
}

std::vector<double> period_ray_slopes(const Coefficients& c, int n) {
    require_reversible(c, "period_ray_slopes");
    if (n < 1) throw std::invalid_argument("period_ray_slopes: n >= 1");
    // Ray invariance forces c_x = 2 alpha c_xy / (1 + alpha^2) with
    // alpha = +-1, independent of the period n.
    std::vector<double> out;
    if (nearly_equal(c.c_x, c.c_xy)) out.push_back(1.0);
    if (nearly_equal(c.c_x, -c.c_xy)) out.push_back(-1.0);
    return out;
}

bool in_return_region(const Coefficients& c, const SigmaPoint& p) {
    require_reversible(c, "in_return_region");
    if (!(p.x > 0.0)) return false;
    return p.y < (2.0 * c.c_xy / c.c_x) * p.x;
}

}  // namespace twofold
