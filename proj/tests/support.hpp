#pragma once
// Shared helpers for the test programs.

#include "armcrit/arm.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace armcrit::testing {

inline ArmLengths random_arm(std::mt19937_64& rng, std::size_t n, double lo = 0.3, double hi = 3.0)
{
    std::uniform_real_distribution<double> len(lo, hi);
    std::vector<double> l(n);
    for (double& v : l) v = len(rng);
    return ArmLengths(l);
}

inline AngleConfig random_config(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    std::vector<double> t(n - 1);
    for (double& v : t) v = ang(rng);
    return AngleConfig(t);
}

/// Random arm whose longest edge beats the runner-up by at least 5%.
inline ArmLengths random_strict_max_arm(std::mt19937_64& rng, std::size_t n)
{
    for (;;) {
        ArmLengths arm = random_arm(rng, n);
        std::vector<double> s(arm.values().begin(), arm.values().end());
        std::sort(s.rbegin(), s.rend());
        if (s[0] > 1.05 * s[1]) return arm;
    }
}

}  // namespace armcrit::testing
