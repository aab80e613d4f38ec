#pragma once
/**
 * @file   cyclic.hpp
 * @brief  Cyclic configurations of an arm: enumeration of the diacyclic ones
 *         (critical points of the area), closed cyclic ones, and the
 *         closure / symmetric-image / duplication constructions.
 *
 * A cyclic configuration on a circle of radius ρ is fixed by a sign string E
 * and ρ: edge i subtends the central angle 2α_i with sin α_i = l_i / (2ρ) and
 * turns around the centre counterclockwise when ε_i = +1, clockwise when
 * ε_i = −1. The chain is diacyclic when Σ ε_i α_i = π/2 + kπ (r_n antipodal
 * to r_0) and closed when Σ ε_i α_i = kπ.
 *
 * Every family is parametrized by γ ∈ [0, π/2], the half-angle of the longest
 * edge (sin γ = l_max / (2ρ)); γ = 0 is the aligned limit ρ = ∞ and γ = π/2
 * makes the longest edge a diameter. In γ all half-angles are smooth up to the
 * diameter endpoint, which keeps roots near that endpoint well conditioned.
 */

#include "armcrit/arm.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace armcrit {

class InfeasibleChord : public Error {
public:
    using Error::Error;
};

class DegenerateOrientation : public Error {
public:
    using Error::Error;
};

/// Edge orientations ε_i ∈ {+1, −1} relative to a circumcentre.
class SignString {
public:
    SignString() = default;
    explicit SignString(std::vector<int> eps);

    /// Bit i of `bits` set means ε_i = −1.
    static SignString from_bits(std::size_t n, std::uint64_t bits);
    /// Parses strings such as "+-++".
    static SignString parse(std::string_view text);

    std::size_t size() const { return eps_.size(); }
    int operator[](std::size_t i) const { return eps_[i]; }
    std::span<const int> values() const { return eps_; }

    /// e(·): number of +1 entries.
    int e_count() const;
    SignString negated() const;
    std::uint64_t bits() const;
    std::string to_string() const;

    friend bool operator==(const SignString&, const SignString&) = default;
    friend auto operator<=>(const SignString& a, const SignString& b)
    {
        return a.bits() <=> b.bits();
    }

private:
    std::vector<int> eps_;
};

enum class CyclicKind { diacyclic, closed, plain };

std::string_view to_string(CyclicKind kind);

struct CyclicConfig {
    double radius{0.0};
    Point center;
    SignString signs;
    std::vector<double> half_angles;  ///< α_i ∈ (0, π/2]
    int branch{0};                    ///< k in the target π/2 + kπ or kπ
    CyclicKind kind{CyclicKind::plain};
    double gamma{0.0};  ///< half-angle of the longest edge
};

/// α = arcsin(l / (2ρ)).
double half_angle(double length, double radius);

/// F(ρ) = Σ ε_i arcsin(l_i / (2ρ)) − (π/2 + kπ).
double diacyclic_residual(const ArmLengths& arm, const SignString& signs, int k, double radius);

/// Σ ε_i arcsin(l_i / (2ρ)) − kπ.
double closed_residual(const ArmLengths& arm, const SignString& signs, int k, double radius);

/// A cyclic configuration realized in the moduli frame.
struct Placement {
    AngleConfig config;
    Point center;
    double radius{0.0};  ///< +inf for the aligned limit γ = 0
    std::vector<double> half_angles;
};

/// All configurations inscribed with a fixed sign string, as a function of γ.
/// The lengths may be in any order; they need not have a unique maximum.
class InscribedFamily {
public:
    InscribedFamily(std::span<const double> lengths, SignString signs);

    const SignString& signs() const { return signs_; }
    double max_length() const { return max_length_; }

    std::vector<double> half_angles(double gamma) const;
    /// Σ ε_i α_i(γ).
    double phase(double gamma) const;
    /// d/dγ of phase().
    double phase_derivative(double gamma) const;
    double radius(double gamma) const;
    double gamma_for_radius(double radius) const;

    Placement place(double gamma) const;

private:
    std::vector<double> lengths_;
    std::vector<double> ratios_;
    SignString signs_;
    double max_length_{0.0};
};

struct RootScanOptions {
    int grid = 4096;  ///< uniform cells over γ ∈ [0, π/2]
    double zero_tol = 1e-13;
};

/// Phase and its derivative sampled on the uniform γ grid.
struct PhaseGrid {
    std::vector<double> gammas;
    std::vector<double> phase;
    std::vector<double> slope;
};

PhaseGrid make_phase_grid(const InscribedFamily& family, int cells);

/// All γ ∈ (0, π/2] with phase(γ) = target, ascending. Sign changes on the
/// grid are bisected to machine precision; cells in which the phase has an
/// interior extremum are split at the extremum so that root pairs are not
/// missed. Roots at γ = 0 are never returned.
std::vector<double> find_phase_roots(const InscribedFamily& family, const PhaseGrid& grid,
                                     double target, double zero_tol);

std::vector<double> find_phase_roots(const InscribedFamily& family, double target,
                                     const RootScanOptions& options = {});

struct DiacyclicPoint {
    AngleConfig config;
    CyclicConfig cyclic;
    double gradient_norm{0.0};
    bool diameter_chord{false};  ///< some α_i within tolerance of π/2
};

struct BranchFailure {
    SignString signs;
    int branch{0};
    std::string reason;
};

struct SolveOptions {
    RootScanOptions scan{};
    /// Accepted gradient norm, relative to the arm's scale Σ l_i² (floored at 1).
    double gradient_tol = 1e-8;
    double dedup_tol = 1e-6;
    double diameter_tol = 1e-9;
};

struct SolveResult {
    std::vector<DiacyclicPoint> points;  ///< sorted by (E, k, ρ), deduplicated
    std::vector<BranchFailure> failures;
    int grid_points{0};
};

/// Largest |k| worth scanning: |Σ ε_i α_i| ≤ nπ/2.
int max_branch(std::size_t n);

/// Every diacyclic configuration of the arm.
SolveResult solve_diacyclic(const ArmLengths& arm, const SolveOptions& options = {});

/// ε_i = sign((r_i − r_{i−1}) × (O − r_{i−1})). `tol` bounds |sin| of the
/// angle at r_{i−1} between the edge and the direction to the centre.
SignString orientation_signs(std::span<const Point> vertices, Point center, double tol = 1e-9);

/// Point reflection through the centre.
std::vector<Point> symmetric_image(std::span<const Point> vertices, Point center);

/// Winding number of the closed polygon around `p` (p must not lie on it).
int winding_number(std::span<const Point> polygon, Point p);

struct ClosureData {
    int winding{0};  ///< ω_R of the closure, from the vertex geometry
    ClosedPolygon closure;
    ClosedPolygon duplication;
};

/// ω = (Σ ε_i α_i + π/2) / π, or nullopt if that is not an integer to `tol`.
std::optional<int> closure_winding(const CyclicConfig& cyclic, double tol = 1e-9);

/// Closure R^Cl: the chain followed by two counterclockwise quarter-circle
/// chords from r_n back to r_0.
ClosedPolygon closure(const ArmLengths& arm, const DiacyclicPoint& point);

/// R^D: the chain followed by its symmetric image, a closed 2n-gon on the
/// doubled linkage (l_1..l_n, l_1..l_n).
ClosedPolygon duplicate(const ArmLengths& arm, const DiacyclicPoint& point);

ClosureData closure_data(const ArmLengths& arm, const DiacyclicPoint& point);

/// Closed cyclic configurations (r_n = r_0) with Σ ε_i α_i = kπ, at finite ρ.
std::vector<CyclicConfig> closed_cyclic_roots(const ArmLengths& arm, const SignString& signs,
                                              int k, const RootScanOptions& options = {});

}  // namespace armcrit
