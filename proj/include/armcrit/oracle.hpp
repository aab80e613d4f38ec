#pragma once
/**
 * @file   oracle.hpp
 * @brief  Brute-force checks that do not go through the cyclic solver:
 *         finite-difference derivatives of the oriented area and a grid search
 *         for critical points on the torus.
 */

#include "armcrit/arm.hpp"

#include <span>
#include <string>
#include <vector>

namespace armcrit {

/// Central differences of oriented_area().
Eigen::VectorXd fd_gradient(const ArmLengths& arm, const AngleConfig& config, double step = 1e-5);

/// Central second differences of oriented_area(), symmetrized.
Eigen::MatrixXd fd_hessian(const ArmLengths& arm, const AngleConfig& config, double step = 1e-4);

struct GridSpec {
    int resolution = 64;  ///< samples per angle
    int refine_iterations = 50;
    /// Convergence threshold on |∇(2A)|, relative to Σ l_i².
    double gradient_threshold = 1e-10;
    /// Refined points closer than this (torus metric) are merged.
    double dedup_tol = 1e-4;
};

struct OracleResult {
    std::vector<AngleConfig> points;
    std::vector<std::string> warnings;
    std::size_t candidates{0};  ///< grid local minima of |∇A|²
};

/// Local minima of |∇A|² on the grid, refined by damped Newton (Levenberg–
/// Marquardt on the gradient with a finite-difference Jacobian), kept when
/// converged, deduplicated. Requires n ≤ 5.
OracleResult grid_critical_search(const ArmLengths& arm, const GridSpec& grid = {});

struct MatchPair {
    std::size_t analytic{0};
    std::size_t oracle{0};
    double distance{0.0};
};

struct MatchReport {
    std::vector<MatchPair> matched;
    std::vector<std::size_t> unmatched_analytic;
    std::vector<std::size_t> unmatched_oracle;
    double tolerance{0.0};

    bool pass() const { return unmatched_analytic.empty() && unmatched_oracle.empty(); }
};

/// Greedy nearest-pair matching under the torus metric.
MatchReport match(std::span<const AngleConfig> analytic, std::span<const AngleConfig> oracle, double tol);

}  // namespace armcrit
