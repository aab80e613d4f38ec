#pragma once
// Static SVG 1.1 drawings of arm configurations and area heatmaps.

#include "armcrit/arm.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace armcrit {

struct SvgPanel {
    AngleConfig config;
    std::string title;
    std::optional<Point> center;  ///< circumcircle and r_0 r_n diameter are drawn when set
    double radius{0.0};
    std::string signs;  ///< one '+'/'-' per edge, drawn at the edge midpoints
};

/// One <g> per panel laid out on a grid. An empty panel list yields an empty
/// (but valid) document.
std::string render_svg(const ArmLengths& arm, std::span<const SvgPanel> panels);

struct HeatmapMarker {
    double theta1{0.0};
    double theta2{0.0};
    std::string label;
};

/// Row-major grid values over [0, 2π)² with markers overlaid.
std::string render_heatmap_svg(int resolution, std::span<const double> values,
                               std::span<const HeatmapMarker> markers);

}  // namespace armcrit
