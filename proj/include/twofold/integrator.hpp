#ifndef TWOFOLD_INTEGRATOR_HPP
#define TWOFOLD_INTEGRATOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "twofold/model.hpp"

namespace twofold {

/// Sparse polynomial in (x, y, z) with integer exponents.
struct Polynomial3 {
    struct Term {
        int px = 0, py = 0, pz = 0;
        double coef = 0.0;
    };
    std::vector<Term> terms;
    double eval(const Point3& p) const;
    bool empty() const { return terms.empty(); }
};

/// Higher-order correction (f1, f2, f3) added to one semi-linear field.
/// Every monomial must have total degree between 2 and 4.
struct FieldPerturbation {
    Polynomial3 f1, f2, f3;
};

/// A concrete piecewise-smooth system: the semi-linear core plus optional
/// polynomial corrections on either side.
struct FieldSpec {
    Coefficients base;
    std::optional<FieldPerturbation> perturb_x;
    std::optional<FieldPerturbation> perturb_y;
};

/// Checks the perturbation degree rules and the base coefficients.
/// Throws SpecParseError / DegenerateFoldError.
void validate_spec(const FieldSpec& spec);

/// Parses the JSON field-spec record: keys "c_x", "c_y", "c_xy", "c_yx"
/// plus optional "perturb_x"/"perturb_y" objects whose "f1"/"f2"/"f3"
/// tables map exponent triples "i,j,k" to coefficients.
FieldSpec parse_field_spec(const std::string& text);

enum class Side { Above, Below };

/// Field value at p: Above -> (c_x, c_xy, x) + F_x(p), Below -> (c_yx, c_y, y) + F_y(p).
Point3 eval_field(const FieldSpec& spec, const Point3& p, Side side);

struct IntegratorOptions {
    double step = 1e-3;
    double event_tol = 1e-12;  // |z| at refined switching events
    double max_time = 50.0;    // per-leg budget of the numeric return map
    int max_events = 10000;
};

enum class Mode { AboveX, BelowY, Slide };
enum class EventKind { Crossing, SlideEntry, SlideExit, Tangency };

struct Trajectory {
    struct Sample {
        double t = 0.0;
        Point3 p;
        Mode mode = Mode::AboveX;
    };
    struct Event {
        double t = 0.0;
        Point3 p;
        EventKind kind = EventKind::Crossing;
    };
    std::vector<Sample> samples;
    std::vector<Event> events;
};

/// Event-driven fixed-step integration obeying the Filippov rules: crossing
/// at the sewing regions, sliding along the normalized sliding field in the
/// sliding/escaping regions, tangency handling on the fold lines. Switching
/// times are refined by bisection until |z| <= event_tol.
Trajectory integrate(const FieldSpec& spec, const Point3& p0, double t_max,
                     const IntegratorOptions& opts = {});

/// Numerical realization of the composed fold involutions: integrates the
/// upper field from p to its Sigma return, then the lower field to the
/// next. Each leg runs in the time direction of its arc's second Sigma
/// root, so it reproduces the total involutions, negative flight times
/// included. Throws NoReturnError when a leg exhausts max_time.
SigmaPoint numeric_return_map(const FieldSpec& spec, const SigmaPoint& p,
                              const IntegratorOptions& opts = {});

}  // namespace twofold

#endif
