#include "twofold/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "twofold/errors.hpp"
#include "twofold/integrator.hpp"
#include "twofold/orbits.hpp"
#include "twofold/sampling.hpp"
#include "twofold/svg.hpp"

namespace twofold::cli {

namespace {

// ---------------------------------------------------------------------------
// Deterministic serialization helpers. Numbers are printed with 17
// significant digits so every double round-trips and output is byte-stable.

std::string num(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* text(bool b) { return b ? "true" : "false"; }

const char* text(SingularityClass s) {
    switch (s) {
        case SingularityClass::Elliptic: return "elliptic";
        case SingularityClass::Parabolic: return "parabolic";
        case SingularityClass::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

const char* text(MapKind k) {
    switch (k) {
        case MapKind::Saddle: return "saddle";
        case MapKind::EllipticRotation: return "elliptic_rotation";
        case MapKind::Degenerate: return "degenerate";
    }
    return "?";
}

const char* text(Mode m) {
    switch (m) {
        case Mode::AboveX: return "above";
        case Mode::BelowY: return "below";
        case Mode::Slide: return "slide";
    }
    return "?";
}

const char* text(EventKind k) {
    switch (k) {
        case EventKind::Crossing: return "crossing";
        case EventKind::SlideEntry: return "slide_entry";
        case EventKind::SlideExit: return "slide_exit";
        case EventKind::Tangency: return "tangency";
    }
    return "?";
}

const char* text(OrbitKind k) {
    return k == OrbitKind::Regular ? "regular" : "pseudo";
}

/// Tiny ordered JSON writer. Keys are emitted in call order.
class JsonWriter {
public:
    void open() { begin('{'); }
    void close() { end('}'); }
    void open_object(const std::string& key) { prefix(key); begin('{'); }
    void open_array(const std::string& key) { prefix(key); begin('['); }
    void close_array() { end(']'); }

    void field(const std::string& key, double v) { prefix(key); out_ << num(v); }
    void field(const std::string& key, int v) { prefix(key); out_ << v; }
    void field(const std::string& key, unsigned long long v) { prefix(key); out_ << v; }
    void field(const std::string& key, bool v) { prefix(key); out_ << text(v); }
    void field(const std::string& key, const char* v) { prefix(key); quoted(v); }
    void field(const std::string& key, const std::string& v) { prefix(key); quoted(v); }
    void null_field(const std::string& key) { prefix(key); out_ << "null"; }
    void element(double v) { prefix(); out_ << num(v); }

    std::string str() const { return out_.str() + "\n"; }

private:
    void begin(char c) {
        out_ << c;
        first_.push_back(true);
        depth_++;
    }
    void end(char c) {
        depth_--;
        first_.pop_back();
        out_ << '\n' << indent() << c;
    }
    std::string indent() const { return std::string(2 * static_cast<size_t>(depth_), ' '); }
    void prefix() {
        if (!first_.back()) out_ << ',';
        first_.back() = false;
        out_ << '\n' << indent();
    }
    void prefix(const std::string& key) {
        prefix();
        quoted(key);
        out_ << ": ";
    }
    void quoted(const std::string& s) { out_ << '"' << s << '"'; }

    std::ostringstream out_;
    std::vector<bool> first_;
    int depth_ = 0;
};

void write_input_echo(JsonWriter& w, const Coefficients& c) {
    w.open_object("input");
    w.field("c_x", c.c_x);
    w.field("c_y", c.c_y);
    w.field("c_xy", c.c_xy);
    w.field("c_yx", c.c_yx);
    w.close();
}

void write_families(JsonWriter& w, const FamilyReport& fam) {
    w.open_object("families");
    w.open_array("periodic_alphas");
    for (double a : fam.periodic_alphas) w.element(a);
    w.close_array();
    w.open_array("pseudo_alphas");
    for (double a : fam.pseudo_alphas) w.element(a);
    w.close_array();
    w.field("scenario", fam.scenario);
    if (fam.fixed_line_slope) {
        w.field("fixed_line_slope", *fam.fixed_line_slope);
    } else {
        w.null_field("fixed_line_slope");
    }
    if (fam.pseudo_wedge_empty) {
        w.field("pseudo_wedge_empty", *fam.pseudo_wedge_empty);
    } else {
        w.null_field("pseudo_wedge_empty");
    }
    w.close();
}

std::string report_json(const char* command, const FullReport& rep) {
    JsonWriter w;
    w.open();
    w.field("schema_version", "1");
    w.field("command", command);
    write_input_echo(w, rep.coefficients);
    w.open_object("system");
    w.field("class", text(rep.system.singularity));
    w.field("simple", rep.system.simple);
    w.field("reversible", rep.system.reversible);
    w.field("fixed_line_class", rep.system.fixed_line_class);
    w.field("regular_two_fold", rep.system.regular_two_fold);
    w.field("sliding_degenerate", rep.system.sliding_degenerate);
    w.close();
    if (rep.map) {
        w.open_object("map");
        w.field("kind", text(rep.map->kind));
        w.open_array("eigenvalue_1");
        w.element(rep.map->eigenvalues[0].real());
        w.element(rep.map->eigenvalues[0].imag());
        w.close_array();
        w.open_array("eigenvalue_2");
        w.element(rep.map->eigenvalues[1].real());
        w.element(rep.map->eigenvalues[1].imag());
        w.close_array();
        w.close();
    } else {
        w.null_field("map");
    }
    write_families(w, rep.families);
    w.close();
    return w.str();
}

std::string report_text(const FullReport& rep) {
    std::ostringstream out;
    out << "class: " << text(rep.system.singularity) << '\n'
        << "simple: " << text(rep.system.simple) << '\n'
        << "reversible: " << text(rep.system.reversible) << '\n'
        << "fixed_line_class: " << text(rep.system.fixed_line_class) << '\n'
        << "regular_two_fold: " << text(rep.system.regular_two_fold) << '\n'
        << "sliding_degenerate: " << text(rep.system.sliding_degenerate) << '\n';
    if (rep.map) {
        out << "map_kind: " << text(rep.map->kind) << '\n'
            << "eigenvalue_1: " << num(rep.map->eigenvalues[0].real()) << " + "
            << num(rep.map->eigenvalues[0].imag()) << "i\n"
            << "eigenvalue_2: " << num(rep.map->eigenvalues[1].real()) << " + "
            << num(rep.map->eigenvalues[1].imag()) << "i\n";
    }
    out << "periodic_alphas:";
    for (double a : rep.families.periodic_alphas) out << ' ' << num(a);
    out << "\npseudo_alphas:";
    for (double a : rep.families.pseudo_alphas) out << ' ' << num(a);
    out << "\nscenario: " << rep.families.scenario << '\n';
    if (rep.families.fixed_line_slope) {
        out << "fixed_line_slope: " << num(*rep.families.fixed_line_slope) << '\n';
    }
    if (rep.families.pseudo_wedge_empty) {
        out << "pseudo_wedge_empty: " << text(*rep.families.pseudo_wedge_empty) << '\n';
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content, std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
    if (!f.good()) {
        err << "warning: short write to " << path << '\n';
    }
}

std::string events_path_for(const std::string& out_path) {
    std::filesystem::path p(out_path);
    const std::string stem = p.stem().string();
    p.replace_filename(stem + ".events.csv");
    return p.string();
}

// ---------------------------------------------------------------------------
// Shared option plumbing.

struct CoeffFlags {
    double cx = 0.0, cy = 0.0, cxy = 0.0, cyx = 0.0;

    void attach(CLI::App* cmd, bool required = true) {
        auto* ox = cmd->add_option("--cx", cx, "fold coefficient c_x");
        auto* oy = cmd->add_option("--cy", cy, "fold coefficient c_y");
        auto* oxy = cmd->add_option("--cxy", cxy, "cross coupling c_xy");
        auto* oyx = cmd->add_option("--cyx", cyx, "cross coupling c_yx");
        if (required) {
            ox->required();
            oy->required();
            oxy->required();
            oyx->required();
        }
    }

    Coefficients validated() const { return validate(Coefficients{cx, cy, cxy, cyx}); }
};

std::string csv_return_map(const Coefficients& c, const SigmaPoint& p, int n) {
    std::ostringstream out;
    out << "k,x,y,t1,t2,valid\n";
    out << "0," << num(p.x) << ',' << num(p.y) << ",0,0,true\n";
    const auto steps = iterate_return_map(c, p, n);
    for (int k = 0; k < n; ++k) {
        const MappedPoint& s = steps[static_cast<size_t>(k)];
        out << (k + 1) << ',' << num(s.image.x) << ',' << num(s.image.y) << ',' << num(s.times[0])
            << ',' << num(s.times[1]) << ',' << text(s.valid) << '\n';
    }
    return out.str();
}

std::string csv_orbit(const ClosedOrbit& orbit) {
    std::ostringstream out;
    out << "seg,t,x,y,z\n";
    for (size_t seg = 0; seg < orbit.segments.size(); ++seg) {
        const Arc& arc = orbit.segments[seg];
        const size_t n = arc.samples.size();
        for (size_t i = 0; i < n; ++i) {
            const double t = arc.duration * static_cast<double>(i) / static_cast<double>(n - 1);
            const Point3& q = arc.samples[i];
            out << seg << ',' << num(t) << ',' << num(q.x) << ',' << num(q.y) << ',' << num(q.z)
                << '\n';
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Plot command.

void plot_regions_backdrop(svg::Canvas& canvas, const Coefficients& c, const FullReport& rep) {
    const double l = canvas.half_extent();
    canvas.rect(0, 0, l, l, "#dce8f6");    // sewing+
    canvas.rect(-l, -l, 0, 0, "#dce8f6");  // sewing-
    canvas.rect(-l, 0, 0, l, "#d8f0d8");   // sliding
    canvas.rect(0, -l, l, 0, "#f6dcdc");   // escaping
    canvas.line(0, -l, 0, l, "#222222", 1.5);  // S_X = {x = 0}
    canvas.line(-l, 0, l, 0, "#222222", 1.5);  // S_Y = {y = 0}
    // Return-region boundary y = (2 c_xy / c_x) x.
    const double m = 2.0 * c.c_xy / c.c_x;
    canvas.line(-l, -m * l, l, m * l, "#8a2be2", 1.0, true);
    // Family rays.
    for (double a : rep.families.periodic_alphas) {
        canvas.line(-l, -a * l, l, a * l, "#1f77b4", 2.0);
    }
    for (double a : rep.families.pseudo_alphas) {
        canvas.line(-l, -a * l, l, a * l, "#d62728", 2.0);
    }
    canvas.text(0.52 * l, 0.82 * l, "SwR+");
    canvas.text(-0.72 * l, -0.82 * l, "SwR-");
    canvas.text(-0.72 * l, 0.82 * l, "SlR");
    canvas.text(0.52 * l, -0.82 * l, "EscR");
}

std::string plot_svg(const Coefficients& c, const std::string& what, const SigmaPoint& start,
                     int iterations, const std::optional<SigmaPoint>& anchor) {
    const FullReport rep = analyze(c);

    double biggest = 1.0;
    std::vector<SigmaPoint> map_points;
    std::optional<ClosedOrbit> orbit;
    if (what == "map") {
        map_points.push_back(start);
        const auto steps = iterate_return_map(c, start, iterations);
        for (const auto& s : steps) map_points.push_back(s.image);
        for (const auto& q : map_points) biggest = std::max({biggest, std::abs(q.x), std::abs(q.y)});
    } else if (what == "orbit") {
        orbit = assemble_orbit(c, *anchor);
        for (const Arc& arc : orbit->segments) {
            for (const Point3& q : arc.samples) {
                biggest = std::max({biggest, std::abs(q.x), std::abs(q.y)});
            }
        }
    }

    svg::Canvas canvas(1.2 * biggest);
    plot_regions_backdrop(canvas, c, rep);
    if (what == "map") {
        canvas.polyline(map_points, "#555555", 1.0);
        for (const auto& q : map_points) canvas.dot(q.x, q.y, 3.0, "#1f77b4");
    } else if (what == "orbit") {
        const char* colors[2] = {"#1f77b4", "#d62728"};
        for (size_t seg = 0; seg < orbit->segments.size(); ++seg) {
            std::vector<SigmaPoint> pts;
            pts.reserve(orbit->segments[seg].samples.size());
            for (const Point3& q : orbit->segments[seg].samples) pts.push_back({q.x, q.y});
            canvas.polyline(pts, colors[seg % 2], 2.0);
        }
        canvas.dot(orbit->anchor.x, orbit->anchor.y, 3.5, "#000000");
    }
    return canvas.str();
}

// ---------------------------------------------------------------------------
// Command handlers. Each returns the process exit code.

int cmd_classify(const Coefficients& c, const std::string& format, std::ostream& out) {
    const FullReport rep = analyze(c);
    out << (format == "text" ? report_text(rep) : report_json("classify", rep));
    return exit_ok;
}

int cmd_return_map(const Coefficients& c, const SigmaPoint& p, int n,
                   const std::optional<std::string>& out_path, std::ostream& out,
                   std::ostream& err) {
    const std::string csv = csv_return_map(c, p, n);
    if (out_path) {
        write_file(*out_path, csv, err);
    } else {
        out << csv;
    }
    return exit_ok;
}

int cmd_orbits(const Coefficients& c, const std::optional<SigmaPoint>& anchor,
               const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err) {
    const FullReport rep = analyze(c);
    JsonWriter w;
    w.open();
    w.field("schema_version", "1");
    w.field("command", "orbits");
    write_input_echo(w, rep.coefficients);
    write_families(w, rep.families);
    if (anchor) {
        const ClosedOrbit orbit = assemble_orbit(c, *anchor);
        w.open_object("orbit");
        w.field("kind", text(orbit.kind));
        w.field("alpha", orbit.alpha);
        w.field("closure_error", orbit.closure_error);
        w.field("zero_length_arc", orbit.has_zero_length_arc);
        w.field("segments", static_cast<int>(orbit.segments.size()));
        w.close();
        if (!out_path) {
            err << "orbits: --out is required when an anchor is given\n";
            return exit_input;
        }
        write_file(*out_path, csv_orbit(orbit), err);
    }
    w.close();
    out << w.str();
    return exit_ok;
}

int cmd_simulate(const FieldSpec& spec, const Point3& p0, double tmax,
                 const IntegratorOptions& opts, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
    const Trajectory traj = integrate(spec, p0, tmax, opts);
    std::ostringstream body;
    body << "t,x,y,z,mode\n";
    for (const auto& s : traj.samples) {
        body << num(s.t) << ',' << num(s.p.x) << ',' << num(s.p.y) << ',' << num(s.p.z) << ','
             << text(s.mode) << '\n';
    }
    std::ostringstream events;
    events << "t,x,y,z,kind\n";
    for (const auto& e : traj.events) {
        events << num(e.t) << ',' << num(e.p.x) << ',' << num(e.p.y) << ',' << num(e.p.z) << ','
               << text(e.kind) << '\n';
    }
    write_file(out_path, body.str(), err);
    write_file(events_path_for(out_path), events.str(), err);
    out << "samples: " << traj.samples.size() << "\nevents: " << traj.events.size() << '\n';
    return exit_ok;
}

int cmd_verify(const Coefficients& c, int samples, unsigned long long seed, double step,
               std::ostream& out) {
    FieldSpec spec;
    spec.base = c;
    IntegratorOptions opts;
    opts.step = step;

    std::mt19937_64 rng(seed);
    double max_dev = 0.0;
    int failures = 0;
    for (int i = 0; i < samples; ++i) {
        const SigmaPoint p = sample_return_region(c, rng);
        const MappedPoint closed = return_map(c, p);
        try {
            const SigmaPoint measured = numeric_return_map(spec, p, opts);
            const double dev = std::hypot(measured.x - closed.image.x, measured.y - closed.image.y);
            max_dev = std::max(max_dev, dev);
        } catch (const std::runtime_error&) {
            failures++;
        }
    }
    const double tolerance = 1e-6;
    const bool pass = failures == 0 && max_dev <= tolerance;

    JsonWriter w;
    w.open();
    w.field("schema_version", "1");
    w.field("command", "verify");
    write_input_echo(w, c);
    w.field("samples", samples);
    w.field("seed", seed);
    w.field("step", step);
    w.field("max_deviation", max_dev);
    w.field("failed_runs", failures);
    w.field("tolerance", tolerance);
    w.field("pass", pass);
    w.close();
    out << w.str();
    return pass ? exit_ok : exit_verify;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analysis of two-fold singularities of piecewise-smooth 3D systems"};
    app.require_subcommand(1);

    // classify
    auto* classify = app.add_subcommand("classify", "region, symmetry and map-type report");
    CoeffFlags classify_c;
    classify_c.attach(classify);
    std::string format = "json";
    classify->add_option("--format", format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));

    // return-map
    auto* rmap = app.add_subcommand("return-map", "iterate the first-return map to CSV");
    CoeffFlags rmap_c;
    rmap_c.attach(rmap);
    double rx = 0.0, ry = 0.0;
    int rn = 1;
    std::string rmap_out;
    rmap->add_option("--x", rx, "start x")->required();
    rmap->add_option("--y", ry, "start y")->required();
    rmap->add_option("--n", rn, "number of iterates")->check(CLI::PositiveNumber);
    rmap->add_option("--out", rmap_out, "CSV path (stdout when omitted)");

    // orbits
    auto* orbits = app.add_subcommand("orbits", "orbit families; optional orbit CSV");
    CoeffFlags orbits_c;
    orbits_c.attach(orbits);
    double ax = 0.0, ay = 0.0;
    std::string orbits_out;
    auto* oax = orbits->add_option("--anchor-x", ax, "orbit anchor x");
    auto* oay = orbits->add_option("--anchor-y", ay, "orbit anchor y");
    orbits->add_option("--out", orbits_out, "orbit CSV path");
    oax->needs(oay);
    oay->needs(oax);

    // simulate
    auto* sim = app.add_subcommand("simulate", "event-driven Filippov integration to CSV");
    CoeffFlags sim_c;
    sim_c.attach(sim, /*required=*/false);
    std::string spec_path;
    sim->add_option("--spec", spec_path, "field-spec JSON file (overrides coefficient flags)");
    double x0 = 0.0, y0 = 0.0, z0 = 0.0, tmax = 10.0;
    sim->add_option("--x0", x0, "start x");
    sim->add_option("--y0", y0, "start y");
    sim->add_option("--z0", z0, "start z");
    sim->add_option("--tmax", tmax, "integration time");
    IntegratorOptions sim_opts;
    sim->add_option("--step", sim_opts.step, "integration step");
    sim->add_option("--event-tol", sim_opts.event_tol, "|z| tolerance at events");
    sim->add_option("--max-events", sim_opts.max_events, "event budget");
    std::string sim_out;
    sim->add_option("--out", sim_out, "trajectory CSV path (events CSV written alongside)")
        ->required();

    // verify
    auto* verify = app.add_subcommand("verify", "closed form vs numerical return map");
    CoeffFlags verify_c;
    verify_c.attach(verify);
    int samples = 100;
    unsigned long long seed = 42;
    double vstep = 1e-3;
    verify->add_option("--samples", samples, "sample count")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--step", vstep, "integrator step override");

    // plot
    auto* plot = app.add_subcommand("plot", "static SVG of regions, map iterates or an orbit");
    CoeffFlags plot_c;
    plot_c.attach(plot);
    std::string what;
    plot->add_option("--what", what, "regions|map|orbit")
        ->required()
        ->check(CLI::IsMember({"regions", "map", "orbit"}));
    double px = 1.0, py = 0.0;
    int pn = 10;
    double pax = 0.0, pay = 0.0;
    plot->add_option("--x", px, "map start x");
    plot->add_option("--y", py, "map start y");
    plot->add_option("--n", pn, "map iterates")->check(CLI::PositiveNumber);
    auto* opax = plot->add_option("--anchor-x", pax, "orbit anchor x");
    auto* opay = plot->add_option("--anchor-y", pay, "orbit anchor y");
    std::string plot_out;
    plot->add_option("--out", plot_out, "SVG path")->required();

    std::vector<std::string> argv_vec = args;
    try {
        app.parse(std::vector<std::string>(argv_vec.rbegin(), argv_vec.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_input;
    }

    try {
        if (classify->parsed()) {
            return cmd_classify(classify_c.validated(), format, out);
        }
        if (rmap->parsed()) {
            std::optional<std::string> path;
            if (!rmap_out.empty()) path = rmap_out;
            return cmd_return_map(rmap_c.validated(), {rx, ry}, rn, path, out, err);
        }
        if (orbits->parsed()) {
            std::optional<SigmaPoint> anchor;
            if (oax->count() > 0) anchor = SigmaPoint{ax, ay};
            std::optional<std::string> path;
            if (!orbits_out.empty()) path = orbits_out;
            return cmd_orbits(orbits_c.validated(), anchor, path, out, err);
        }
        if (sim->parsed()) {
            FieldSpec spec;
            if (!spec_path.empty()) {
                std::ifstream f(spec_path);
                if (!f) {
                    err << "simulate: cannot read spec file " << spec_path << '\n';
                    return exit_input;
                }
                std::ostringstream text;
                text << f.rdbuf();
                spec = parse_field_spec(text.str());
            } else {
                spec.base = sim_c.validated();
            }
            return cmd_simulate(spec, {x0, y0, z0}, tmax, sim_opts, sim_out, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(verify_c.validated(), samples, seed, vstep, out);
        }
        if (plot->parsed()) {
            const Coefficients c = plot_c.validated();
            std::optional<SigmaPoint> anchor;
            if (opax->count() > 0 && opay->count() > 0) anchor = SigmaPoint{pax, pay};
            if (what == "orbit" && !anchor) {
                err << "plot: --what orbit requires --anchor-x and --anchor-y\n";
                return exit_input;
            }
            write_file(plot_out, plot_svg(c, what, {px, py}, pn, anchor), err);
            return exit_ok;
        }
    } catch (const DegenerateFoldError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const SpecParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const NotClosedError& e) {
        err << "error: " << e.what() << '\n';
        return exit_not_closed;
    } catch (const MaxEventsExceededError& e) {
        err << "error: " << e.what() << '\n';
        return exit_integrator;
    } catch (const StepTooCoarseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_integrator;
    } catch (const NoReturnError& e) {
        err << "error: " << e.what() << '\n';
        return exit_integrator;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}

}  // namespace twofold::cli
