#include "armcrit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace armcrit {

namespace {

constexpr double kPanel = 260.0;
constexpr double kMargin = 28.0;

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

void header(std::ostringstream& out, double width, double height)
{
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width) << "\" height=\""
        << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
}

}  // namespace

std::string render_svg(const ArmLengths& arm, std::span<const SvgPanel> panels)
{
    std::ostringstream out;
    const std::size_t count = panels.size();
    const std::size_t cols = std::min<std::size_t>(4, std::max<std::size_t>(1, count));
    const std::size_t rows = count == 0 ? 0 : (count + cols - 1) / cols;
    header(out, count == 0 ? 1.0 : kPanel * cols, count == 0 ? 1.0 : kPanel * rows);
    out << "<style>text{font-family:sans-serif;font-size:11px}</style>\n";

    for (std::size_t i = 0; i < count; ++i) {
        const SvgPanel& p = panels[i];
        const VertexPath path = realize(arm, p.config);

        double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
        double xmax = -xmin, ymax = -xmin;
        auto grow = [&](double x, double y) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        };
        for (const Point& v : path.vertices) grow(v.x, v.y);
        if (p.center) {
            grow(p.center->x - p.radius, p.center->y - p.radius);
            grow(p.center->x + p.radius, p.center->y + p.radius);
        }
        const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
        const double s = (kPanel - 2.0 * kMargin) / span;
        const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
        auto X = [&](double x) { return kPanel / 2.0 + s * (x - cx); };
        auto Y = [&](double y) { return kPanel / 2.0 + 8.0 - s * (y - cy); };

        const double ox = kPanel * static_cast<double>(i % cols);
        const double oy = kPanel * static_cast<double>(i / cols);
        out << "<g id=\"panel-" << i << "\" transform=\"translate(" << fmt(ox) << ',' << fmt(oy) << ")\">\n";
        out << "  <rect x=\"1\" y=\"1\" width=\"" << fmt(kPanel - 2) << "\" height=\"" << fmt(kPanel - 2)
            << "\" fill=\"white\" stroke=\"#bbbbbb\"/>\n";
        out << "  <text x=\"8\" y=\"16\">" << escape(p.title) << "</text>\n";
        if (p.center) {
            out << "  <circle cx=\"" << fmt(X(p.center->x)) << "\" cy=\"" << fmt(Y(p.center->y)) << "\" r=\""
                << fmt(s * p.radius) << "\" fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
            out << "  <circle cx=\"" << fmt(X(p.center->x)) << "\" cy=\"" << fmt(Y(p.center->y))
                << "\" r=\"2\" fill=\"#999999\"/>\n";
        }
        const Point r0 = path.vertices.front(), rn = path.vertices.back();
        out << "  <line x1=\"" << fmt(X(r0.x)) << "\" y1=\"" << fmt(Y(r0.y)) << "\" x2=\"" << fmt(X(rn.x))
            << "\" y2=\"" << fmt(Y(rn.y)) << "\" stroke=\"#cc4444\" stroke-dasharray=\"6 3\"/>\n";
        out << "  <polyline fill=\"none\" stroke=\"#224488\" stroke-width=\"2\" points=\"";
        for (std::size_t k = 0; k < path.vertices.size(); ++k)
            out << (k ? " " : "") << fmt(X(path.vertices[k].x)) << ',' << fmt(Y(path.vertices[k].y));
        out << "\"/>\n";
        for (std::size_t k = 0; k < path.vertices.size(); ++k) {
            const Point v = path.vertices[k];
            out << "  <circle cx=\"" << fmt(X(v.x)) << "\" cy=\"" << fmt(Y(v.y)) << "\" r=\"3\" fill=\"#224488\"/>\n";
            out << "  <text x=\"" << fmt(X(v.x) + 5) << "\" y=\"" << fmt(Y(v.y) - 5) << "\">r" << k << "</text>\n";
        }
        for (std::size_t k = 0; k < p.signs.size() && k + 1 < path.vertices.size(); ++k) {
            const Point a = path.vertices[k], b = path.vertices[k + 1];
            out << "  <text x=\"" << fmt(0.5 * (X(a.x) + X(b.x)) + 4) << "\" y=\"" << fmt(0.5 * (Y(a.y) + Y(b.y)) + 12)
                << "\" fill=\"#cc4444\">" << p.signs[k] << "</text>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_heatmap_svg(int resolution, std::span<const double> values, std::span<const HeatmapMarker> markers)
{
    if (resolution < 1 || values.size() != static_cast<std::size_t>(resolution) * resolution)
        throw Error("heatmap values do not match the resolution");
    constexpr double size = 512.0;
    const double cell = size / resolution;
    double vmax = 0.0;
    for (double v : values) vmax = std::max(vmax, std::abs(v));
    if (vmax == 0.0) vmax = 1.0;

    std::ostringstream out;
    header(out, size, size);
    out << "<g id=\"heatmap\" shape-rendering=\"crispEdges\">\n";
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
            const double t = values[static_cast<std::size_t>(i) * resolution + j] / vmax;  // [-1, 1]
            const int hi = 255, lo = static_cast<int>(std::lround(255.0 * (1.0 - std::abs(t))));
            const int r = t >= 0 ? hi : lo, g = lo, b = t >= 0 ? lo : hi;
            char color[8];
            std::snprintf(color, sizeof color, "#%02x%02x%02x", r, g, b);
            // θ1 along x, θ2 upwards
            out << "<rect x=\"" << fmt(i * cell) << "\" y=\"" << fmt(size - (j + 1) * cell) << "\" width=\""
                << fmt(cell) << "\" height=\"" << fmt(cell) << "\" fill=\"" << color << "\"/>\n";
        }
    }
    out << "</g>\n<g id=\"critical-points\">\n";
    for (const HeatmapMarker& m : markers) {
        const double x = m.theta1 / kTwoPi * size;
        const double y = size - m.theta2 / kTwoPi * size;
        out << "  <circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"5\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
        out << "  <text x=\"" << fmt(x + 7) << "\" y=\"" << fmt(y - 7) << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << escape(m.label) << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace armcrit
