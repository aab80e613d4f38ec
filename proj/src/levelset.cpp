#include "armcrit/levelset.hpp"

#include <cstdio>

namespace armcrit {

LevelSetGrid levelset_grid(const ArmLengths& arm, int resolution)
{
    if (arm.size() != 3) throw DimensionMismatch("level sets are drawn for 3-arms only");
    if (resolution < 2) throw Error("level-set resolution must be at least 2");
    LevelSetGrid g;
    g.resolution = resolution;
    const double h = kTwoPi / resolution;
    for (int i = 0; i < resolution; ++i) {
        g.theta1.push_back(h * i);
        g.theta2.push_back(h * i);
    }
    g.values.reserve(static_cast<std::size_t>(resolution) * resolution);
    for (double t1 : g.theta1)
        for (double t2 : g.theta2) g.values.push_back(oriented_area(realize(arm, AngleConfig({t1, t2}))));
    return g;
}

std::string levelset_csv(const LevelSetGrid& grid)
{
    std::string out = "theta1,theta2,doubled_area\n";
    char buf[96];
    for (int i = 0; i < grid.resolution; ++i) {
        for (int j = 0; j < grid.resolution; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid.theta1[i], grid.theta2[j],
                          grid.values[static_cast<std::size_t>(i) * grid.resolution + j]);
            out += buf;
        }
    }
    return out;
}

}  // namespace armcrit
