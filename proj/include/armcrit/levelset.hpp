#pragma once
// Doubled-area samples of a 3-arm over its moduli torus.

#include "armcrit/arm.hpp"

#include <string>
#include <vector>

namespace armcrit {

struct LevelSetGrid {
    int resolution{0};
    std::vector<double> theta1;  ///< resolution values, step 2π / resolution
    std::vector<double> theta2;
    std::vector<double> values;  ///< row-major: values[i * resolution + j] at (theta1[i], theta2[j])
};

/// Throws DimensionMismatch unless the arm has exactly three edges.
LevelSetGrid levelset_grid(const ArmLengths& arm, int resolution);

/// "theta1,theta2,doubled_area" header, one LF-terminated row per sample,
/// 17 significant digits.
std::string levelset_csv(const LevelSetGrid& grid);

}  // namespace armcrit
