#pragma once
/**
 * @file   morse.hpp
 * @brief  Morse indices of the area function at diacyclic configurations:
 *         closed formula, Hessian signature, full reports, and the 3-arm
 *         cubic for the connecting length.
 *
 * Index formula for an open arm, in terms of e(R) (count of positively
 * oriented edges), ω_R (winding of the closure around the centre) and
 * δ(R) = Σ ε_i tan α_i:
 *
 *     μ_R = e(R) − 2ω_R + 1   if δ(R) > 0
 *     μ_R = e(R) − 2ω_R       if δ(R) < 0
 *
 * For a closed cyclic polygon P the corresponding values are
 * e(P) − 1 − 2ω_P and e(P) − 2 − 2ω_P.
 */

#include "armcrit/arm.hpp"
#include "armcrit/cyclic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace armcrit {

class NotCritical : public Error {
public:
    using Error::Error;
};

/// δ = Σ ε_i tan α_i; nullopt when some α_i is within `diameter_tol` of π/2.
std::optional<double> delta(const CyclicConfig& cyclic, double diameter_tol = 1e-9);

/// Formula index of a diacyclic configuration; nullopt when δ is undefined,
/// |δ| ≤ delta_tol, or ω is not an integer.
std::optional<int> morse_index_open(const CyclicConfig& cyclic, double diameter_tol = 1e-9,
                                    double delta_tol = 1e-12);

/// e, δ, ω of a closed polygon inscribed in a circle with the given centre.
struct ClosedInvariants {
    int e_count{0};
    std::optional<double> delta;
    int winding{0};
    double radius{0.0};
};

ClosedInvariants closed_invariants(const ClosedPolygon& polygon, Point center,
                                   double diameter_tol = 1e-9);

/// Formula index of a closed cyclic polygon (generic case only).
std::optional<int> morse_index_closed(const ClosedPolygon& polygon, Point center,
                                      double diameter_tol = 1e-9, double delta_tol = 1e-12);

struct NumericIndex {
    int index{0};  ///< number of eigenvalues below −tolerance
    bool degenerate{false};
    double min_abs_eigenvalue{0.0};
    double tolerance{0.0};
    std::vector<double> eigenvalues;  ///< ascending
};

struct NumericIndexOptions {
    /// Relative eigenvalue tolerance, applied to max(max |λ|, Σ l_i²).
    double eigen_tol = 1e-7;
    /// Gradient norm accepted as critical, relative to max(1, Σ l_i²).
    double gradient_tol = 1e-8;
};

/// Signature of a symmetric matrix with the given tolerance scale.
NumericIndex signature(const Eigen::MatrixXd& hessian, double scale, double eigen_tol);

/// Index from the analytic Hessian. Throws NotCritical if the gradient is not
/// small.
NumericIndex morse_index_numeric(const ArmLengths& arm, const AngleConfig& config,
                                 const NumericIndexOptions& options = {});

/// Index of the area restricted to the moduli space of closed polygons with
/// the polygon's side lengths, at a polygon that is critical there. Uses the
/// Hessian of the Lagrangian on the tangent space of the closure constraint.
NumericIndex closed_index_numeric(const ClosedPolygon& polygon,
                                  const NumericIndexOptions& options = {});

struct CriticalPoint {
    AngleConfig config;
    CyclicConfig cyclic;
    double doubled_area{0.0};
    int e_count{0};
    std::optional<double> delta;
    int omega{0};
    std::optional<int> index_formula;
    int index_numeric{0};
    bool degenerate{false};
    double min_abs_eigenvalue{0.0};
    double gradient_norm{0.0};
    bool diameter_chord{false};
};

struct MorseReport {
    std::vector<CriticalPoint> points;  ///< by doubled area desc, then angles
    std::vector<int> counts_by_index;   ///< size n, indexed by numeric index
    std::vector<int> betti;             ///< C(n−1, k)
    bool perfect{false};                ///< nondegenerate and counts == betti
    int euler_check{0};                 ///< Σ (−1)^index
    std::vector<std::string> warnings;
    bool solver_failed{false};
    bool any_degenerate{false};
};

struct AnalyzeOptions {
    SolveOptions solve{};
    NumericIndexOptions numeric{};
    double delta_tol = 1e-12;
};

std::vector<int> binomial_row(int m);

CriticalPoint annotate(const ArmLengths& arm, const DiacyclicPoint& point,
                       const AnalyzeOptions& options = {});

MorseReport analyze(const ArmLengths& arm, const AnalyzeOptions& options = {});

/// d³ = (l₁² + l₂² + l₃²) d ± 2 l₁ l₂ l₃ for the connecting length d = |r₀ r₃|
/// of a critical 3-arm.
struct CubicRoot {
    double d{0.0};
    int sign{1};  ///< which cubic: +1 or −1
    bool feasible{false};  ///< d ≥ l₁ and d ≥ l₃
};

struct ThreeArmCubic {
    std::vector<CubicRoot> roots;       ///< all six real roots
    std::vector<AngleConfig> configs;   ///< critical configurations, deduplicated
    std::vector<double> config_lengths; ///< d for each entry of configs
};

ThreeArmCubic cubic_3arm(double l1, double l2, double l3);

}  // namespace armcrit
