#ifndef TWOFOLD_SAMPLING_HPP
#define TWOFOLD_SAMPLING_HPP

#include <cmath>
#include <random>

#include "twofold/model.hpp"

namespace twofold {

/// Deterministic uniform double in [0, 1) from the standardized mt19937_64
/// stream (no distribution objects, so values are platform-stable).
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Random point of the return region (both return-map flight times
/// strictly positive), scaled into the unit disk with a safety margin from
/// the region boundary.
inline SigmaPoint sample_return_region(const Coefficients& c, std::mt19937_64& rng) {
    const double u = uniform(rng, 0.05, 1.0);
    const double v = uniform(rng, 0.05, 1.0);
    const double x = (c.c_x > 0.0) ? -u : u;    // -2x/c_x > 0
    const double y1 = (c.c_y > 0.0) ? -v : v;   // -2*y1/c_y > 0 at the involution image
    const double y = y1 + (2.0 * c.c_xy / c.c_x) * x;
    const double r = uniform(rng, 0.1, 1.0);
    const double n = std::hypot(x, y);
    return {x * r / n, y * r / n};
}

}  // namespace twofold

#endif
