#include "twofold/integrator.hpp"

#include <cmath>
#include <stdexcept>

#include "twofold/errors.hpp"
#include "twofold/tolerances.hpp"

namespace twofold {

namespace {

// Fold-line proximity at event points. Looser than event_tol because it
// gates a qualitative branch, not a root refinement.
constexpr double tangency_tol = 1e-9;

constexpr int max_bisections = 200;

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

}  // namespace

double Polynomial3::eval(const Point3& p) const {
    double s = 0.0;
    for (const Term& t : terms) {
        s += t.coef * ipow(p.x, t.px) * ipow(p.y, t.py) * ipow(p.z, t.pz);
    }
    return s;
}

void validate_spec(const FieldSpec& spec) {
    validate(spec.base);
    for (const auto* pert : {&spec.perturb_x, &spec.perturb_y}) {
        if (!pert->has_value()) continue;
        for (const Polynomial3* poly : {&(*pert)->f1, &(*pert)->f2, &(*pert)->f3}) {
            for (const Polynomial3::Term& t : poly->terms) {
                if (t.px < 0 || t.py < 0 || t.pz < 0) {
                    throw SpecParseError("perturbation exponents must be non-negative");
                }
                const int deg = t.px + t.py + t.pz;
                if (deg < 2) {
                    throw SpecParseError("perturbation monomials must have total degree >= 2");
                }
                if (deg > 4) {
                    throw SpecParseError("perturbation monomials are capped at total degree 4");
                }
                if (!std::isfinite(t.coef)) {
                    throw SpecParseError("perturbation coefficients must be finite");
                }
            }
        }
    }
}

Point3 eval_field(const FieldSpec& spec, const Point3& p, Side side) {
    if (side == Side::Above) {
        Point3 v{spec.base.c_x, spec.base.c_xy, p.x};
        if (spec.perturb_x) {
            v.x += spec.perturb_x->f1.eval(p);
            v.y += spec.perturb_x->f2.eval(p);
            v.z += spec.perturb_x->f3.eval(p);
        }
        return v;
    }
    Point3 v{spec.base.c_yx, spec.base.c_y, p.y};
    if (spec.perturb_y) {
        v.x += spec.perturb_y->f1.eval(p);
        v.y += spec.perturb_y->f2.eval(p);
        v.z += spec.perturb_y->f3.eval(p);
    }
    return v;
}

namespace {

// Normal components of the two one-sided fields at a Sigma-point; their
// signs classify the hit.
struct NormalPair {
    double xh = 0.0;
    double yh = 0.0;
};

NormalPair normals_at(const FieldSpec& spec, const Point3& p) {
    return {eval_field(spec, p, Side::Above).z, eval_field(spec, p, Side::Below).z};
}

Point3 rk4_step(const FieldSpec& spec, Side side, const Point3& p, double h) {
    const Point3 k1 = eval_field(spec, p, side);
    const Point3 p2{p.x + 0.5 * h * k1.x, p.y + 0.5 * h * k1.y, p.z + 0.5 * h * k1.z};
    const Point3 k2 = eval_field(spec, p2, side);
    const Point3 p3{p.x + 0.5 * h * k2.x, p.y + 0.5 * h * k2.y, p.z + 0.5 * h * k2.z};
    const Point3 k3 = eval_field(spec, p3, side);
    const Point3 p4{p.x + h * k3.x, p.y + h * k3.y, p.z + h * k3.z};
    const Point3 k4 = eval_field(spec, p4, side);
    const double w = h / 6.0;
    return {p.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            p.y + w * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
            p.z + w * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z)};
}

// In-plane velocity of the normalized sliding field, from the full fields.
Vec2 slide_velocity(const FieldSpec& spec, const Point3& p) {
    const Point3 a = eval_field(spec, p, Side::Above);
    const Point3 b = eval_field(spec, p, Side::Below);
    return {a.x * b.z - b.x * a.z, a.y * b.z - b.y * a.z};
}

Point3 rk4_slide_step(const FieldSpec& spec, const Point3& p, double h) {
    const Vec2 k1 = slide_velocity(spec, p);
    const Vec2 k2 = slide_velocity(spec, {p.x + 0.5 * h * k1.x, p.y + 0.5 * h * k1.y, 0.0});
    const Vec2 k3 = slide_velocity(spec, {p.x + 0.5 * h * k2.x, p.y + 0.5 * h * k2.y, 0.0});
    const Vec2 k4 = slide_velocity(spec, {p.x + h * k3.x, p.y + h * k3.y, 0.0});
    const double w = h / 6.0;
    return {p.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            p.y + w * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y), 0.0};
}

void check_options(const IntegratorOptions& opts) {
    if (!(opts.step > 0.0)) throw std::invalid_argument("integrator step must be positive");
    if (!(opts.event_tol > 0.0)) throw std::invalid_argument("event_tol must be positive");
}

// Bisection on the fraction of one (possibly backward) RK4 step from `from`
// for a z-root. The bracket is [0, span] with z(0) = z_near of known sign
// and z(span) on the other side.
double refine_z_root(const FieldSpec& spec, Side side, const Point3& from, double span,
                     double z_near, double event_tol) {
    double f_lo = 0.0, f_hi = 1.0;
    double s = span;
    for (int i = 0; i < max_bisections; ++i) {
        const double f = 0.5 * (f_lo + f_hi);
        s = f * span;
        const double z = rk4_step(spec, side, from, s).z;
        if (std::abs(z) <= event_tol) return s;
        if ((z > 0.0) == (z_near > 0.0)) {
            f_lo = f;
        } else {
            f_hi = f;
        }
        if (f_hi - f_lo <= 1e-18) break;
    }
    return s;
}

}  // namespace

Trajectory integrate(const FieldSpec& spec, const Point3& p0, double t_max,
                     const IntegratorOptions& opts) {
    check_options(opts);
    validate_spec(spec);
    if (t_max < 0.0) throw std::invalid_argument("integrate: t_max must be >= 0");

    Trajectory traj;
    Point3 p = p0;
    double t = 0.0;
    Mode mode = Mode::AboveX;
    bool stopped = false;

    auto record_event = [&](EventKind kind) {
        if (static_cast<int>(traj.events.size()) >= opts.max_events) {
            throw MaxEventsExceededError("integrate: event budget exhausted");
        }
        traj.events.push_back({t, p, kind});
    };

    // Continuation at a fold-line point: the field whose quadratic contact
    // is visible carries the point off Sigma; otherwise the transverse field
    // decides between sliding and crossing. A two-fold hit stops the run.
    auto tangency_mode = [&](const NormalPair& n) {
        if (std::abs(n.xh) <= tangency_tol && std::abs(n.yh) <= tangency_tol) {
            stopped = true;
            return;
        }
        if (std::abs(n.xh) <= tangency_tol) {  // on S_X
            if (spec.base.c_x > 0.0) {
                mode = Mode::AboveX;
            } else if (n.yh > tangency_tol) {
                mode = Mode::Slide;
                p.z = 0.0;
            } else {
                mode = Mode::BelowY;
            }
        } else {  // on S_Y
            if (spec.base.c_y < 0.0) {
                mode = Mode::BelowY;
            } else if (n.xh < -tangency_tol) {
                mode = Mode::Slide;
                p.z = 0.0;
            } else {
                mode = Mode::AboveX;
            }
        }
    };

    // Classify a refined Sigma hit and set the continuation mode.
    auto resolve_sigma_hit = [&]() {
        const NormalPair n = normals_at(spec, p);
        if (std::abs(n.xh) <= tangency_tol || std::abs(n.yh) <= tangency_tol) {
            record_event(EventKind::Tangency);
            tangency_mode(n);
            return;
        }
        if (n.xh > 0.0 && n.yh > 0.0) {
            record_event(EventKind::Crossing);
            mode = Mode::AboveX;
        } else if (n.xh < 0.0 && n.yh < 0.0) {
            record_event(EventKind::Crossing);
            mode = Mode::BelowY;
        } else {
            record_event(EventKind::SlideEntry);
            mode = Mode::Slide;
            p.z = 0.0;
        }
    };

    if (std::abs(p.z) > opts.event_tol) {
        mode = (p.z > 0.0) ? Mode::AboveX : Mode::BelowY;
    } else {
        const NormalPair n = normals_at(spec, p);
        if (std::abs(n.xh) <= tangency_tol || std::abs(n.yh) <= tangency_tol) {
            tangency_mode(n);
        } else if (n.xh > 0.0 && n.yh > 0.0) {
            mode = Mode::AboveX;
        } else if (n.xh < 0.0 && n.yh < 0.0) {
            mode = Mode::BelowY;
        } else {
            mode = Mode::Slide;
            p.z = 0.0;
        }
    }
    traj.samples.push_back({t, p, mode});

    // An arc must leave Sigma before the next switching event counts; a
    // re-contact before departure means the step cannot resolve the arc.
    bool departed = std::abs(p.z) > opts.event_tol;

    while (!stopped && t < t_max) {
        const double h = std::min(opts.step, t_max - t);
        if (h <= 0.0) break;

        if (mode == Mode::Slide) {
            const NormalPair n0 = normals_at(spec, p);
            if (std::abs(n0.xh) <= tangency_tol && std::abs(n0.yh) <= tangency_tol) {
                record_event(EventKind::Tangency);  // reached the two-fold
                break;
            }
            const Point3 q = rk4_slide_step(spec, p, h);
            const NormalPair n1 = normals_at(spec, q);
            const bool flip_x = (n0.xh > 0.0) != (n1.xh > 0.0);
            const bool flip_y = (n0.yh > 0.0) != (n1.yh > 0.0);
            if (flip_x && flip_y) {
                throw StepTooCoarseError("integrate: two sliding exits within one step");
            }
            if (flip_x || flip_y) {
                // Refine the boundary crossing of the flipped normal.
                double lo = 0.0, hi = h;
                const double g_lo = flip_x ? n0.xh : n0.yh;
                double s = hi;
                Point3 e = q;
                for (int i = 0; i < max_bisections; ++i) {
                    s = 0.5 * (lo + hi);
                    e = rk4_slide_step(spec, p, s);
                    const NormalPair ns = normals_at(spec, e);
                    const double g = flip_x ? ns.xh : ns.yh;
                    if (std::abs(g) <= opts.event_tol) break;
                    if ((g > 0.0) == (g_lo > 0.0)) {
                        lo = s;
                    } else {
                        hi = s;
                    }
                }
                t += s;
                p = e;
                record_event(EventKind::SlideExit);
                const NormalPair ne = normals_at(spec, p);
                const double other = flip_x ? ne.yh : ne.xh;
                mode = (other > 0.0) ? Mode::AboveX : Mode::BelowY;
                departed = false;
                traj.samples.push_back({t, p, mode});
                continue;
            }
            t += h;
            p = q;
            traj.samples.push_back({t, p, mode});
            continue;
        }

        // Parabolic-arc mode: watch the oriented distance to Sigma.
        const Side side = (mode == Mode::AboveX) ? Side::Above : Side::Below;
        const double sgn = (mode == Mode::AboveX) ? 1.0 : -1.0;
        const Point3 q = rk4_step(spec, side, p, h);
        const double g1 = q.z * sgn;
        if (!departed) {
            if (g1 < -opts.event_tol) {
                // Left Sigma and returned within a single step.
                throw StepTooCoarseError("integrate: two switching events within one step");
            }
            departed = g1 > opts.event_tol;
            t += h;
            p = q;
            traj.samples.push_back({t, p, mode});
            continue;
        }
        if (g1 <= opts.event_tol) {
            double s = h;
            if (g1 < -opts.event_tol) {
                s = refine_z_root(spec, side, p, h, p.z, opts.event_tol);
            }
            p = rk4_step(spec, side, p, s);
            t += s;
            resolve_sigma_hit();
            departed = false;
            traj.samples.push_back({t, p, mode});
            continue;
        }
        t += h;
        p = q;
        traj.samples.push_back({t, p, mode});
    }
    return traj;
}

namespace {

// One involution leg: from a Sigma-point, follow the one-sided field's own
// orbit to its second Sigma intersection. The parabola z(t) ~ nh t +
// c_fold t^2 / 2 has its other root at -2 nh / c_fold, so the leg runs in
// the direction of that root's sign. Identity on the field's fold line.
SigmaPoint involution_leg(const FieldSpec& spec, Side side, const SigmaPoint& start,
                          const IntegratorOptions& opts) {
    const Point3 p0{start.x, start.y, 0.0};
    const double nh = eval_field(spec, p0, side).z;
    if (std::abs(nh) <= tangency_tol) return start;

    const double c_fold = (side == Side::Above) ? spec.base.c_x : spec.base.c_y;
    const double dir = (nh * c_fold < 0.0) ? 1.0 : -1.0;
    const double dt = dir * opts.step;

    Point3 p = p0;
    double elapsed = 0.0;
    bool escaped = false;
    while (elapsed < opts.max_time) {
        const Point3 q = rk4_step(spec, side, p, dt);
        elapsed += opts.step;
        // Only look for the return once the previous point is clearly off
        // the plane; otherwise the start itself would bracket a root.
        if (escaped && ((p.z > 0.0) != (q.z > 0.0))) {
            const double s = refine_z_root(spec, side, p, dt, p.z, opts.event_tol);
            const Point3 e = rk4_step(spec, side, p, s);
            return {e.x, e.y};
        }
        if (!escaped && std::abs(q.z) > opts.event_tol) escaped = true;
        p = q;
    }
    throw NoReturnError("numeric_return_map: no Sigma return within max_time");
}

}  // namespace

SigmaPoint numeric_return_map(const FieldSpec& spec, const SigmaPoint& p,
                              const IntegratorOptions& opts) {
    check_options(opts);
    validate_spec(spec);
    const SigmaPoint mid = involution_leg(spec, Side::Above, p, opts);
    return involution_leg(spec, Side::Below, mid, opts);
}

}  // namespace twofold
