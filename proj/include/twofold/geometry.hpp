#ifndef TWOFOLD_GEOMETRY_HPP
#define TWOFOLD_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <complex>

namespace twofold {

/// A point of the switching plane Sigma = {z = 0}.
struct SigmaPoint {
    double x = 0.0;
    double y = 0.0;
};

/// A point of the ambient space.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Planar vector (sliding-field values, eigenvector directions, ...).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
inline double norm(const SigmaPoint& p) { return std::hypot(p.x, p.y); }
inline double norm(const Point3& p) { return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z); }

inline double distance(const SigmaPoint& a, const SigmaPoint& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline double distance(const Point3& a, const Point3& b) {
    return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                     (a.z - b.z) * (a.z - b.z));
}

/// Row-major 2x2 matrix. Linear parts of the return maps and the sliding
/// linearization both live here.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    Vec2 apply(const Vec2& v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
    SigmaPoint apply(const SigmaPoint& p) const {
        return {a11 * p.x + a12 * p.y, a21 * p.x + a22 * p.y};
    }

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
};

/// Eigenvalues by the quadratic formula; complex pair when the discriminant
/// is negative. Ordered by descending real part, then descending imaginary.
inline std::array<std::complex<double>, 2> eigenvalues(const Mat2& m) {
    const double tr = m.trace();
    const double dt = m.det();
    const double disc = tr * tr - 4.0 * dt;
    std::array<std::complex<double>, 2> lam;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        // Avoid cancellation: compute the larger-magnitude root first.
        const double q = (tr >= 0.0) ? 0.5 * (tr + root) : 0.5 * (tr - root);
        double l1, l2;
        if (q != 0.0) {
            l1 = q;
            l2 = dt / q;
        } else {
            l1 = 0.5 * (tr + root);
            l2 = 0.5 * (tr - root);
        }
        if (l1 < l2) std::swap(l1, l2);
        lam[0] = {l1, 0.0};
        lam[1] = {l2, 0.0};
    } else {
        const double im = 0.5 * std::sqrt(-disc);
        lam[0] = {0.5 * tr, im};
        lam[1] = {0.5 * tr, -im};
    }
    return lam;
}

/// Real eigenvector for a real eigenvalue, picked from the better conditioned
/// of the two defining rows. Zero vector only for scalar matrices.
inline Vec2 real_eigenvector(const Mat2& m, double lambda) {
    const Vec2 v1{m.a12, lambda - m.a11};
    const Vec2 v2{lambda - m.a22, m.a21};
    return (norm(v1) >= norm(v2)) ? v1 : v2;
}

}  // namespace twofold

#endif
