#ifndef TWOFOLD_TOLERANCES_HPP
#define TWOFOLD_TOLERANCES_HPP

#include <algorithm>
#include <cmath>

namespace twofold {

/// Absolute floor below which a fold coefficient counts as degenerate.
inline constexpr double eps_fold = 1e-12;

/// Relative tolerance for the algebraic equality predicates (simple,
/// reversible, coefficient-product conditions). Coefficients are user
/// inputs of order one, so a unit floor is applied.
inline constexpr double eps_eq = 1e-9;

/// Absolute tolerance for membership on the tangency lines S_X / S_Y.
inline constexpr double eps_tangency = 1e-12;

/// Angular tolerance (radians) for eigenvector / axis parallelism tests.
inline constexpr double eps_angle = 1e-9;

/// |a - b| <= rel * max(1, |a|, |b|)
inline bool nearly_equal(double a, double b, double rel = eps_eq) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

inline bool nearly_zero(double a, double abs_tol = eps_tangency) {
    return std::abs(a) <= abs_tol;
}

}  // namespace twofold

#endif
