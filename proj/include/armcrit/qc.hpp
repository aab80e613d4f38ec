#pragma once
/**
 * @file   qc.hpp
 * @brief  Components of quasicyclic configurations (vertices on a circle or on
 *         a line) for an arm with a strictly longest edge.
 *
 * Edges are reordered internally so the longest comes first; the area is
 * unchanged under reordering, and every configuration reported here is mapped
 * back to the caller's edge order by permuting the (ε_i, α_i) pairs on the
 * same circle.
 *
 * For a pattern P = (ε₃..εₙ) (canonical order) the component is a loop of four
 * arcs, each the family of inscribed configurations with a fixed sign string,
 * parametrized by γ = α₁ ∈ [0, π/2]:
 *
 *     arc 0  (+,+, P)   γ: 0 → π/2     loop parameter s ∈ [0, 1]
 *     arc 1  (−,+, P)   γ: π/2 → 0     s ∈ [1, 2]
 *     arc 2  (+,−,−P)   γ: 0 → π/2     s ∈ [2, 3]
 *     arc 3  (−,−,−P)   γ: π/2 → 0     s ∈ [3, 4]
 *
 * Arcs 0/1 and 2/3 meet where edge 1 is a diameter (2ρ = l₁); arcs 1/2 and 3/0
 * meet at ρ = ∞, the two aligned configurations of the component.
 */

#include "armcrit/arm.hpp"
#include "armcrit/cyclic.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace armcrit {

/// Thrown when the longest edge is not unique: the components then touch.
class QcTie : public Error {
public:
    using Error::Error;
};

struct ArcDescriptor {
    SignString signs;  ///< canonical edge order
    double rho_min{0.0};
    double rho_max{0.0};  ///< +inf
    bool gamma_increasing{true};
};

enum class SpecialKind { diacyclic, aligned, closed };

std::string_view to_string(SpecialKind kind);

struct SpecialPoint {
    SpecialKind kind{SpecialKind::diacyclic};
    double loop_param{0.0};  ///< s ∈ [0, 4)
    int arc{0};
    double gamma{0.0};
    double radius{0.0};
    int branch{0};       ///< k of the target π/2 + kπ or kπ (0 for aligned)
    SignString signs;    ///< caller's edge order
    AngleConfig config;  ///< caller's edge order
};

struct QCComponent {
    std::vector<int> pattern;  ///< (ε₃..εₙ), canonical order
    std::array<ArcDescriptor, 4> arcs;
    std::vector<SpecialPoint> special_points;  ///< loop order
    ArmLengths original;
    ArmLengths canonical;                ///< descending
    std::vector<std::size_t> permutation;  ///< canonical index j ↦ original index

    int diacyclic_count() const;
};

struct QcOptions {
    RootScanOptions scan{};
    double dedup_tol = 1e-6;
};

/// Sign string in the caller's edge order for a canonical-order string.
SignString to_original_order(const QCComponent& component, const SignString& canonical_signs);

/// The family of one arc, in the caller's edge order.
InscribedFamily arc_family(const QCComponent& component, int arc);

/// One component per pattern, patterns ordered with '+' before '-' from ε₃
/// onwards. Special points are filled in.
std::vector<QCComponent> enumerate_components(const ArmLengths& arm, const QcOptions& options = {});

/// Diacyclic roots (Σεα ≡ π/2 mod π), closed roots (Σεα ≡ 0 mod π, finite ρ)
/// and the two aligned joints, in loop order.
std::vector<SpecialPoint> special_points(const QCComponent& component, const QcOptions& options = {});

/// The two aligned configurations: first at s = 0, second at s = 2.
std::array<AngleConfig, 2> aligned_configs(const QCComponent& component);

struct TraceSample {
    double loop_param{0.0};
    int arc{0};
    double gamma{0.0};
    double radius{0.0};
    double lifted_phase{0.0};  ///< Σεα lifted continuously around the loop, 0 → 2π
    AngleConfig config;        ///< caller's edge order
};

struct Trace {
    std::vector<TraceSample> samples;  ///< closed loop; the last joins the first
    int samples_per_arc{0};
    double max_step{0.0};  ///< largest torus distance between neighbours
    bool continuous{false};
};

/// Samples the loop uniformly in γ on every arc. If neighbouring samples are
/// farther apart than `continuity_tol`, the sampling is doubled (up to three
/// times) before giving up with `continuous == false`.
Trace trace_component(const QCComponent& component, int samples_per_arc = 512,
                      double continuity_tol = 0.25);

}  // namespace armcrit
