#include "twofold/flows.hpp"

#include <cmath>
#include <stdexcept>

#include "twofold/tolerances.hpp"

namespace twofold {

Point3 flow_x(const Coefficients& c, const Point3& p, double t) {
    return {p.x + c.c_x * t, p.y + c.c_xy * t, p.z + p.x * t + 0.5 * c.c_x * t * t};
}

Point3 flow_y(const Coefficients& c, const Point3& p, double t) {
    return {p.x + c.c_yx * t, p.y + c.c_y * t, p.z + p.y * t + 0.5 * c.c_y * t * t};
}

FlightTime flight_time_x(const Coefficients& c, const SigmaPoint& p) {
    if (nearly_zero(p.x)) return {0.0, true};
    return {-2.0 * p.x / c.c_x, false};
}

FlightTime flight_time_y(const Coefficients& c, const SigmaPoint& p) {
    if (nearly_zero(p.y)) return {0.0, true};
    return {-2.0 * p.y / c.c_y, false};
}

SigmaPoint fold_involution_x(const Coefficients& c, const SigmaPoint& p) {
    return {-p.x, p.y - 2.0 * c.c_xy * p.x / c.c_x};
}

SigmaPoint fold_involution_y(const Coefficients& c, const SigmaPoint& p) {
    return {p.x - 2.0 * c.c_yx * p.y / c.c_y, -p.y};
}

namespace {

// sinh(w)/w, stable through w = 0.
double sinhc(double w) {
    if (std::abs(w) < 1e-4) {
        const double w2 = w * w;
        return 1.0 + w2 / 6.0 + w2 * w2 / 120.0;
    }
    return std::sinh(w) / w;
}

double sinc(double w) {
    if (std::abs(w) < 1e-4) {
        const double w2 = w * w;
        return 1.0 - w2 / 6.0 + w2 * w2 / 120.0;
    }
    return std::sin(w) / w;
}

}  // namespace

SigmaPoint slide_flow(const Coefficients& c, const SigmaPoint& p, double t) {
    // exp(A t) for A = [[-c_yx, c_x], [-c_y, c_xy]], written through the
    // half-trace mu and the squared frequency mu^2 - det:
    //   exp(A t) = e^{mu t} [ cosh(w t) I + t sinhc(w t) (A - mu I) ].
    const Mat2 a{-c.c_yx, c.c_x, -c.c_y, c.c_xy};
    const double mu = 0.5 * a.trace();
    const double disc = mu * mu - a.det();
    double cmul, smul;  // cosh(w t) and t * sinhc(w t), or the circular pair
    if (disc >= 0.0) {
        const double w = std::sqrt(disc);
        cmul = std::cosh(w * t);
        smul = t * sinhc(w * t);
    } else {
        const double w = std::sqrt(-disc);
        cmul = std::cos(w * t);
        smul = t * sinc(w * t);
    }
    const double e = std::exp(mu * t);
    const Mat2 phi{e * (cmul + smul * (a.a11 - mu)), e * (smul * a.a12),
                   e * (smul * a.a21), e * (cmul + smul * (a.a22 - mu))};
    return phi.apply(p);
}

Arc sample_arc(const Coefficients& c, FieldTag field, const Point3& p, double t, int n) {
    if (n < 2) throw std::invalid_argument("sample_arc: need at least two samples");
    Arc arc;
    arc.field = field;
    arc.start = p;
    arc.duration = t;
    arc.samples.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double ti = t * static_cast<double>(i) / static_cast<double>(n - 1);
        Point3 q;
        switch (field) {
            case FieldTag::X: q = flow_x(c, p, ti); break;
            case FieldTag::Y: q = flow_y(c, p, ti); break;
            case FieldTag::Slide: {
                const SigmaPoint s = slide_flow(c, SigmaPoint{p.x, p.y}, ti);
                q = {s.x, s.y, 0.0};
                break;
            }
        }
        arc.samples.push_back(q);
    }
    arc.end = arc.samples.back();
    return arc;
}

}  // namespace twofold
