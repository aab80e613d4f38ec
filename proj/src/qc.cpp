#include "armcrit/qc.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace armcrit {

namespace {

constexpr std::array<double, 4> kLiftOffset{0.0, kPi, kPi, 2.0 * kPi};

double loop_param(int arc, double gamma)
{
    const double u = gamma / (kPi / 2.0);
    return arc + ((arc % 2 == 0) ? u : 1.0 - u);
}

}  // namespace

std::string_view to_string(SpecialKind kind)
{
    switch (kind) {
    case SpecialKind::diacyclic: return "diacyclic";
    case SpecialKind::aligned: return "aligned";
    case SpecialKind::closed: return "closed";
    }
    return "diacyclic";
}

int QCComponent::diacyclic_count() const
{
    return static_cast<int>(std::count_if(special_points.begin(), special_points.end(),
                                          [](const SpecialPoint& p) { return p.kind == SpecialKind::diacyclic; }));
}

SignString to_original_order(const QCComponent& component, const SignString& canonical_signs)
{
    std::vector<int> eps(canonical_signs.size());
    for (std::size_t j = 0; j < canonical_signs.size(); ++j) eps[component.permutation[j]] = canonical_signs[j];
    return SignString(std::move(eps));
}

InscribedFamily arc_family(const QCComponent& component, int arc)
{
    return InscribedFamily(component.original.values(), to_original_order(component, component.arcs[arc].signs));
}

std::array<AngleConfig, 2> aligned_configs(const QCComponent& component)
{
    return {arc_family(component, 0).place(0.0).config, arc_family(component, 1).place(0.0).config};
}

std::vector<SpecialPoint> special_points(const QCComponent& component, const QcOptions& options)
{
    const std::size_t n = component.canonical.size();
    const int kmax = max_branch(n);
    std::vector<SpecialPoint> pts;

    for (int arc = 0; arc < 4; ++arc) {
        const InscribedFamily canon(component.canonical.values(), component.arcs[arc].signs);
        const InscribedFamily orig = arc_family(component, arc);
        const PhaseGrid grid = make_phase_grid(canon, options.scan.grid);
        for (int k = -kmax; k <= kmax; ++k) {
            for (SpecialKind kind : {SpecialKind::diacyclic, SpecialKind::closed}) {
                const double target = kind == SpecialKind::diacyclic ? kPi / 2.0 + k * kPi : k * kPi;
                for (double gamma : find_phase_roots(canon, grid, target, options.scan.zero_tol)) {
                    const Placement p = orig.place(gamma);
                    SpecialPoint sp;
                    sp.kind = kind;
                    sp.arc = arc;
                    sp.gamma = gamma;
                    sp.radius = p.radius;
                    sp.branch = k;
                    sp.loop_param = loop_param(arc, gamma);
                    sp.signs = orig.signs();
                    sp.config = p.config;
                    pts.push_back(std::move(sp));
                }
            }
        }
    }

    const auto aligned = aligned_configs(component);
    for (int j = 0; j < 2; ++j) {
        SpecialPoint sp;
        sp.kind = SpecialKind::aligned;
        sp.arc = 2 * j;
        sp.gamma = 0.0;
        sp.radius = std::numeric_limits<double>::infinity();
        sp.loop_param = 2.0 * j;
        sp.signs = to_original_order(component, component.arcs[2 * j].signs);
        sp.config = aligned[j];
        pts.push_back(std::move(sp));
    }

    std::stable_sort(pts.begin(), pts.end(),
                     [](const SpecialPoint& a, const SpecialPoint& b) { return a.loop_param < b.loop_param; });
    // a root on a diameter join shows up on both neighbouring arcs
    std::vector<SpecialPoint> out;
    for (auto& p : pts) {
        const bool dup = std::any_of(out.begin(), out.end(), [&](const SpecialPoint& q) {
            return q.kind == p.kind && torus_distance(q.config, p.config) < options.dedup_tol;
        });
        if (!dup) out.push_back(std::move(p));
    }
    return out;
}

std::vector<QCComponent> enumerate_components(const ArmLengths& arm, const QcOptions& options)
{
    const std::size_t n = arm.size();
    if (n > 20) throw Error("enumerate_components: n > 20 is not supported");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return arm[a] > arm[b]; });
    std::vector<double> sorted(n);
    for (std::size_t j = 0; j < n; ++j) sorted[j] = arm[perm[j]];
    if (!(sorted[0] > sorted[1]))
        throw QcTie("QC-components intersect: the longest edge is not unique, so the quasicyclic "
                    "configurations do not split into disjoint circles");

    std::vector<QCComponent> comps;
    const std::uint64_t count = std::uint64_t{1} << (n - 2);
    for (std::uint64_t m = 0; m < count; ++m) {
        std::vector<int> pattern(n - 2);
        for (std::size_t j = 0; j < n - 2; ++j) pattern[j] = ((m >> (n - 3 - j)) & 1U) ? -1 : 1;

        auto signs_for = [&](int e1, int e2, int tail) {
            std::vector<int> eps{e1, e2};
            for (int p : pattern) eps.push_back(tail * p);
            return SignString(std::move(eps));
        };
        const double rho_min = sorted[0] / 2.0;
        const double inf = std::numeric_limits<double>::infinity();
        QCComponent c{pattern,
                      {ArcDescriptor{signs_for(1, 1, 1), rho_min, inf, true},
                       ArcDescriptor{signs_for(-1, 1, 1), rho_min, inf, false},
                       ArcDescriptor{signs_for(1, -1, -1), rho_min, inf, true},
                       ArcDescriptor{signs_for(-1, -1, -1), rho_min, inf, false}},
                      {},
                      arm,
                      ArmLengths(sorted),
                      perm};
        c.special_points = special_points(c, options);
        comps.push_back(std::move(c));
    }
    return comps;
}

namespace {

Trace sample_loop(const QCComponent& component, int samples_per_arc)
{
    Trace t;
    t.samples_per_arc = samples_per_arc;
    for (int arc = 0; arc < 4; ++arc) {
        const InscribedFamily orig = arc_family(component, arc);
        // the last sample of each arc is the first of the next one
        for (int i = 0; i < samples_per_arc; ++i) {
            const double u = static_cast<double>(i) / samples_per_arc;
            const double gamma = (arc % 2 == 0) ? u * (kPi / 2.0) : (1.0 - u) * (kPi / 2.0);
            const Placement p = orig.place(gamma);
            TraceSample s;
            s.arc = arc;
            s.gamma = gamma;
            s.radius = p.radius;
            s.loop_param = loop_param(arc, gamma);
            s.lifted_phase = orig.phase(gamma) + kLiftOffset[arc];
            s.config = p.config;
            t.samples.push_back(std::move(s));
        }
    }
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
        const auto& a = t.samples[i].config;
        const auto& b = t.samples[(i + 1) % t.samples.size()].config;
        t.max_step = std::max(t.max_step, torus_distance(a, b));
    }
    return t;
}

}  // namespace

Trace trace_component(const QCComponent& component, int samples_per_arc, double continuity_tol)
{
    if (samples_per_arc < 2) throw Error("trace_component needs at least 2 samples per arc");
    Trace t = sample_loop(component, samples_per_arc);
    for (int retry = 0; retry < 3 && t.max_step > continuity_tol; ++retry)
        t = sample_loop(component, t.samples_per_arc * 2);
    t.continuous = t.max_step <= continuity_tol;
    return t;
}

}  // namespace armcrit
