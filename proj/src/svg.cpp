#include "twofold/svg.hpp"

#include <cstdio>

namespace twofold::svg {

namespace {

std::string fmt(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

Canvas::Canvas(double world_half_extent, int pixels)
    : extent_(world_half_extent), pixels_(pixels) {}

double Canvas::px(double x) const {
    return (x + extent_) / (2.0 * extent_) * pixels_;
}

double Canvas::py(double y) const {
    return (extent_ - y) / (2.0 * extent_) * pixels_;
}

void Canvas::rect(double x0, double y0, double x1, double y1, const std::string& fill) {
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    body_ << "  <rect x=\"" << fmt(px(x0)) << "\" y=\"" << fmt(py(y1)) << "\" width=\""
          << fmt(px(x1) - px(x0)) << "\" height=\"" << fmt(py(y0) - py(y1)) << "\" fill=\""
          << fill << "\"/>\n";
}

void Canvas::line(double x0, double y0, double x1, double y1, const std::string& stroke,
                  double width_px, bool dashed) {
    body_ << "  <line x1=\"" << fmt(px(x0)) << "\" y1=\"" << fmt(py(y0)) << "\" x2=\""
          << fmt(px(x1)) << "\" y2=\"" << fmt(py(y1)) << "\" stroke=\"" << stroke
          << "\" stroke-width=\"" << fmt(width_px) << "\"";
    if (dashed) body_ << " stroke-dasharray=\"6,4\"";
    body_ << "/>\n";
}

void Canvas::polyline(const std::vector<SigmaPoint>& pts, const std::string& stroke,
                      double width_px) {
    if (pts.size() < 2) return;
    body_ << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
          << fmt(width_px) << "\" points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i) body_ << ' ';
        body_ << fmt(px(pts[i].x)) << ',' << fmt(py(pts[i].y));
    }
    body_ << "\"/>\n";
}

void Canvas::dot(double x, double y, double radius_px, const std::string& fill) {
    body_ << "  <circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\""
          << fmt(radius_px) << "\" fill=\"" << fill << "\"/>\n";
}

void Canvas::text(double x, double y, const std::string& label, const std::string& fill) {
    body_ << "  <text x=\"" << fmt(px(x)) << "\" y=\"" << fmt(py(y))
          << "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"" << fill << "\">" << label
          << "</text>\n";
}

std::string Canvas::str() const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixels_ << "\" height=\""
        << pixels_ << "\" viewBox=\"0 0 " << pixels_ << ' ' << pixels_ << "\">\n"
        << "  <rect x=\"0\" y=\"0\" width=\"" << pixels_ << "\" height=\"" << pixels_
        << "\" fill=\"#ffffff\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
}

}  // namespace twofold::svg
