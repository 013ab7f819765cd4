#include "cfisac/svg.hpp"

#include <cstdarg>
#include <cstdio>

namespace cfisac {

namespace {

constexpr double kCanvas = 640.0;
constexpr double kMargin = 60.0;

struct Mapper {
    const Region& region;

    double x(double wx) const {
        return kMargin + (wx - region.x_min) / region.width() * (kCanvas - 2 * kMargin);
    }
    double y(double wy) const {
        // SVG y grows downward
        return kCanvas - kMargin - (wy - region.y_min) / region.height() * (kCanvas - 2 * kMargin);
    }
    double scale() const { return (kCanvas - 2 * kMargin) / region.width(); }
};

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

std::string circle(double cx, double cy, double r, const char* style) {
    return fmt("    <circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" %s/>\n", cx, cy, r, style);
}

std::string square(double cx, double cy, double half, const char* style) {
    return fmt("    <rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" %s/>\n",
               cx - half, cy - half, 2 * half, 2 * half, style);
}

std::string triangle(double cx, double cy, double r, const char* style) {
    return fmt("    <polygon points=\"%.2f,%.2f %.2f,%.2f %.2f,%.2f\" %s/>\n", cx, cy - r,
               cx - 0.866 * r, cy + 0.5 * r, cx + 0.866 * r, cy + 0.5 * r, style);
}

constexpr const char* kUeStyle = "fill=\"#1f77b4\"";
constexpr const char* kTxStyle = "fill=\"#d62728\"";
constexpr const char* kRxStyle = "fill=\"#2ca02c\"";
constexpr const char* kTrajStyle = "fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"4 3\"";
constexpr const char* kSampleStyle = "fill=\"#888888\"";

} // namespace

std::string deployment_svg(const Scenario& scenario, const Deployment& deployment,
                           std::span<const Point2D> ues,
                           std::span<const Point2D> trajectory_points) {
    const Mapper map{scenario.region};
    std::string svg;
    svg += fmt("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
               "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
               "viewBox=\"0 0 %.0f %.0f\">\n",
               kCanvas, kCanvas, kCanvas, kCanvas);

    svg += "  <g id=\"axes\">\n";
    svg += fmt("    <rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" "
               "stroke=\"black\"/>\n",
               kMargin, kMargin, kCanvas - 2 * kMargin, kCanvas - 2 * kMargin);
    svg += fmt("    <text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"middle\">%g</text>\n",
               kMargin, kCanvas - kMargin + 16, scenario.region.x_min);
    svg += fmt("    <text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"middle\">%g</text>\n",
               kCanvas - kMargin, kCanvas - kMargin + 16, scenario.region.x_max);
    svg += fmt("    <text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"end\">%g</text>\n",
               kMargin - 6, kCanvas - kMargin + 4, scenario.region.y_min);
    svg += fmt("    <text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"end\">%g</text>\n",
               kMargin - 6, kMargin + 4, scenario.region.y_max);
    svg += "  </g>\n";

    svg += "  <g id=\"deployment\">\n";
    const Point2D& c = scenario.trajectory.center;
    svg += circle(map.x(c.x), map.y(c.y), scenario.trajectory.radius * map.scale(), kTrajStyle);
    for (const Point2D& p : trajectory_points)
        svg += circle(map.x(p.x), map.y(p.y), 2.5, kSampleStyle);
    for (const Point2D& p : ues) svg += circle(map.x(p.x), map.y(p.y), 5.0, kUeStyle);
    for (const Point2D& p : deployment.tx) svg += square(map.x(p.x), map.y(p.y), 5.0, kTxStyle);
    for (const Point2D& p : deployment.rx) svg += triangle(map.x(p.x), map.y(p.y), 6.0, kRxStyle);
    svg += "  </g>\n";

    svg += "  <g id=\"legend\">\n";
    const double lx = kCanvas - kMargin - 150.0;
    double ly = kMargin + 14.0;
    svg += circle(lx, ly, 5.0, kUeStyle);
    svg += fmt("    <text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">UE</text>\n", lx + 12, ly + 4);
    ly += 18;
    svg += square(lx, ly, 5.0, kTxStyle);
    svg += fmt("    <text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">tx AP</text>\n", lx + 12, ly + 4);
    ly += 18;
    svg += triangle(lx, ly, 6.0, kRxStyle);
    svg += fmt("    <text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">rx AP</text>\n", lx + 12, ly + 4);
    ly += 18;
    svg += circle(lx, ly, 2.5, kSampleStyle);
    svg += fmt("    <text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">target samples</text>\n", lx + 12,
               ly + 4);
    svg += "  </g>\n";
    svg += "</svg>\n";
    return svg;
}

} // namespace cfisac
