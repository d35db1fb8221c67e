#ifndef TWOFOLD_SVG_HPP
#define TWOFOLD_SVG_HPP

#include <sstream>
#include <string>
#include <vector>

#include "twofold/geometry.hpp"

namespace twofold::svg {

/// Minimal deterministic SVG canvas over the world square [-L, L]^2.
/// Elements are emitted in call order; coordinates use fixed formatting,
/// so identical inputs give byte-identical documents.
class Canvas {
public:
    Canvas(double world_half_extent, int pixels = 640);

    void rect(double x0, double y0, double x1, double y1, const std::string& fill);
    void line(double x0, double y0, double x1, double y1, const std::string& stroke,
              double width_px = 1.0, bool dashed = false);
    void polyline(const std::vector<SigmaPoint>& pts, const std::string& stroke,
                  double width_px = 1.5);
    void dot(double x, double y, double radius_px, const std::string& fill);
    void text(double x, double y, const std::string& label, const std::string& fill = "#333333");

    std::string str() const;
    double half_extent() const { return extent_; }

private:
    double px(double x) const;
    double py(double y) const;

    double extent_;
    int pixels_;
    std::ostringstream body_;
};

}  // namespace twofold::svg

#endif
