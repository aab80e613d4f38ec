#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "armcrit/morse.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>

using namespace armcrit;
using doctest::Approx;

namespace {

std::vector<int> indices(const MorseReport& r)
{
    std::vector<int> out;
    for (const CriticalPoint& p : r.points) out.push_back(p.index_numeric);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("binomial rows")
{
    CHECK(binomial_row(0) == std::vector<int>{1});
    CHECK(binomial_row(3) == std::vector<int>{1, 3, 3, 1});
    CHECK(binomial_row(5) == std::vector<int>{1, 5, 10, 10, 5, 1});
}

TEST_CASE("delta of a convex configuration")
{
    CyclicConfig c;
    c.signs = SignString::parse("+++");
    c.half_angles = {0.3, 0.3, 0.3};
    REQUIRE(delta(c).has_value());
    CHECK(*delta(c) == Approx(3 * std::tan(0.3)));
    c.half_angles[1] = kPi / 2;
    CHECK_FALSE(delta(c).has_value());
}

TEST_CASE("2-arm: one maximum and one minimum")
{
    const MorseReport r = analyze(ArmLengths({1, 1}));
    REQUIRE(r.points.size() == 2);
    CHECK(indices(r) == std::vector<int>{0, 1});
    const CriticalPoint& max = r.points.front();
    CHECK(max.doubled_area == Approx(1.0));
    CHECK(max.e_count == 2);
    CHECK(max.omega == 1);
    REQUIRE(max.delta.has_value());
    CHECK(*max.delta > 0.0);
    REQUIRE(max.index_formula.has_value());
    CHECK(*max.index_formula == 1);
    CHECK(r.perfect);
}

TEST_CASE("equilateral 3-arm has a monkey saddle")
{
    const MorseReport r = analyze(ArmLengths({1, 1, 1}));
    REQUIRE(r.points.size() == 3);
    CHECK(r.any_degenerate);
    CHECK_FALSE(r.perfect);
    CHECK(r.points[0].index_numeric == 2);
    CHECK_FALSE(r.points[0].degenerate);
    CHECK(r.points[1].degenerate);
    CHECK(r.points[2].index_numeric == 0);
    CHECK_FALSE(r.points[2].degenerate);
    CHECK(r.points[0].doubled_area == Approx(-r.points[2].doubled_area));
}

TEST_CASE("generic 3-arms have histogram (1,2,1)")
{
    std::mt19937_64 rng(31);
    for (int s = 0; s < 30; ++s) {
        const MorseReport r = analyze(testing::random_arm(rng, 3));
        if (r.any_degenerate) continue;
        CHECK(r.points.size() == 4);
        CHECK(r.counts_by_index == std::vector<int>{1, 2, 1});
        CHECK(r.perfect);
    }
}

TEST_CASE("paper example arms")
{
    const MorseReport p = analyze(perturb_lengths(ArmLengths({10, 3, 2, 1}), 1e-6, 7));
    CHECK(p.points.size() == 8);
    CHECK(p.counts_by_index == std::vector<int>{1, 3, 3, 1});
    CHECK(p.perfect);

    const MorseReport q = analyze(ArmLengths({22, 17, 21.9, 19}));
    CHECK(q.points.size() == 12);
    CHECK_FALSE(q.perfect);
    CHECK(q.euler_check == 0);
    CHECK_FALSE(q.any_degenerate);
}

TEST_CASE("saddle of a generic 3-arm has mixed eigenvalues")
{
    const ArmLengths arm = perturb_lengths(ArmLengths({2, 1, 1}), 1e-6, 1);
    const MorseReport r = analyze(arm);
    int saddles = 0;
    for (const CriticalPoint& p : r.points) {
        const NumericIndex ni = morse_index_numeric(arm, p.config);
        if (ni.index != 1) continue;
        ++saddles;
        REQUIRE(ni.eigenvalues.size() == 2);
        CHECK(ni.eigenvalues[0] < 0.0);
        CHECK(ni.eigenvalues[1] > 0.0);
    }
    CHECK(saddles == 2);
}

TEST_CASE("numeric index refuses non-critical points")
{
    CHECK_THROWS_AS(morse_index_numeric(ArmLengths({1, 1, 1}), AngleConfig({kPi / 2, kPi})), NotCritical);
}

TEST_CASE("formula and numeric indices agree on random arms")
{
    std::mt19937_64 rng(32);
    int compared = 0, mismatches = 0;
    for (int s = 0; s < 120; ++s) {
        const ArmLengths arm = testing::random_arm(rng, 3 + s % 4);
        for (const CriticalPoint& p : analyze(arm).points) {
            if (p.degenerate || p.diameter_chord || !p.index_formula) continue;
            ++compared;
            if (*p.index_formula != p.index_numeric) ++mismatches;
        }
    }
    CHECK(compared > 500);
    CHECK(mismatches == 0);
}

TEST_CASE("Euler characteristic, Morse inequalities and mirror complementarity")
{
    std::mt19937_64 rng(33);
    for (int s = 0; s < 60; ++s) {
        const std::size_t n = 2 + s % 5;
        const ArmLengths arm = testing::random_arm(rng, n);
        const MorseReport r = analyze(arm);
        if (r.any_degenerate) continue;
        CHECK(r.euler_check == 0);
        for (std::size_t k = 0; k < r.betti.size(); ++k) CHECK(r.counts_by_index[k] >= r.betti[k]);
        for (const CriticalPoint& p : r.points) {
            const AngleConfig m = mirror(p.config);
            const auto it = std::find_if(r.points.begin(), r.points.end(), [&](const CriticalPoint& q) {
                return torus_distance(q.config, m) < 1e-7;
            });
            REQUIRE(it != r.points.end());
            CHECK(p.index_numeric + it->index_numeric == static_cast<int>(n) - 1);
        }
    }
}

TEST_CASE("critical values and indices do not depend on the edge order")
{
    std::mt19937_64 rng(34);
    for (int s = 0; s < 20; ++s) {
        const std::size_t n = 3 + s % 3;
        const ArmLengths arm = testing::random_arm(rng, n);
        std::vector<double> l(arm.values().begin(), arm.values().end());
        std::shuffle(l.begin(), l.end(), rng);
        const MorseReport a = analyze(arm), b = analyze(ArmLengths(l));
        REQUIRE(a.points.size() == b.points.size());
        for (std::size_t i = 0; i < a.points.size(); ++i)
            CHECK(std::abs(a.points[i].doubled_area - b.points[i].doubled_area) < 1e-8);
        CHECK(indices(a) == indices(b));
    }
}

TEST_CASE("closed index of the duplicated 2-arm maximum")
{
    const ArmLengths arm({1, 1});
    const SolveResult res = solve_diacyclic(arm);
    const auto it = std::find_if(res.points.begin(), res.points.end(), [](const DiacyclicPoint& p) {
        return p.cyclic.signs.to_string() == "++";
    });
    REQUIRE(it != res.points.end());
    const ClosedPolygon square = duplicate(arm, *it);
    const ClosedInvariants inv = closed_invariants(square, it->cyclic.center);
    CHECK(inv.e_count == 4);
    CHECK(inv.winding == 1);
    REQUIRE(inv.delta.has_value());
    CHECK(*inv.delta > 0.0);
    const auto formula = morse_index_closed(square, it->cyclic.center);
    REQUIRE(formula.has_value());
    CHECK(*formula == 1);
    const NumericIndex numeric = closed_index_numeric(square);
    CHECK_FALSE(numeric.degenerate);
    CHECK(numeric.index == 1);
}

TEST_CASE("duplication: identities, Lemma 2 and the parity selection")
{
    std::mt19937_64 rng(35);
    std::vector<ArmLengths> arms{ArmLengths({1, 1}), perturb_lengths(ArmLengths({10, 3, 2, 1}), 1e-6, 7),
                                 ArmLengths({22, 17, 21.9, 19})};
    for (int s = 0; s < 30; ++s) arms.push_back(testing::random_arm(rng, 3 + s % 3));
    int checked = 0;
    for (const ArmLengths& arm : arms) {
        for (const DiacyclicPoint& p : solve_diacyclic(arm).points) {
            const CriticalPoint cp = annotate(arm, p);
            if (cp.degenerate || p.diameter_chord || !cp.delta) continue;
            const ClosedPolygon dup = duplicate(arm, p);
            const ClosedInvariants inv = closed_invariants(dup, p.cyclic.center);
            REQUIRE(inv.delta.has_value());
            CHECK(inv.e_count == 2 * cp.e_count);
            CHECK(std::abs(*inv.delta - 2 * *cp.delta) < 1e-9);
            CHECK(inv.winding == 2 * cp.omega - 1);

            const NumericIndex mu_d = closed_index_numeric(dup);
            CHECK_FALSE(mu_d.degenerate);
            CHECK((mu_d.index == 2 * cp.index_numeric || mu_d.index == 2 * cp.index_numeric - 1));
            CHECK((mu_d.index % 2 == 1) == (*cp.delta > 0.0));
            const auto closed_formula = morse_index_closed(dup, p.cyclic.center);
            REQUIRE(closed_formula.has_value());
            CHECK(*closed_formula == mu_d.index);
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("3-arm cubic")
{
    const ThreeArmCubic c = cubic_3arm(2, 1, 1);
    std::vector<double> plus, minus;
    for (const CubicRoot& r : c.roots) {
        const double lhs = r.d * r.d * r.d, rhs = 6.0 * r.d + r.sign * 4.0;
        CHECK(lhs == Approx(rhs).epsilon(1e-12));
        if (r.feasible) (r.sign > 0 ? plus : minus).push_back(r.d);
    }
    REQUIRE(plus.size() == 1);
    REQUIRE(minus.size() == 1);
    CHECK(std::abs(plus[0] - (1.0 + std::sqrt(3.0))) < 1e-12);
    CHECK(std::abs(minus[0] - 2.0) < 1e-12);

    CHECK(cubic_3arm(1, 1, 1).configs.size() == 3);

    std::mt19937_64 rng(36);
    for (int s = 0; s < 20; ++s) {
        const ArmLengths arm = testing::random_arm(rng, 3);
        const ThreeArmCubic t = cubic_3arm(arm[0], arm[1], arm[2]);
        const SolveResult res = solve_diacyclic(arm);
        REQUIRE(t.configs.size() == 4);
        REQUIRE(res.points.size() == 4);
        for (std::size_t i = 0; i < t.configs.size(); ++i) {
            const VertexPath path = realize(arm, t.configs[i]);
            CHECK(norm(path.vertices.back()) == Approx(t.config_lengths[i]).epsilon(1e-9));
            bool matched = false;
            for (const DiacyclicPoint& p : res.points)
                if (torus_distance(p.config, t.configs[i]) < 1e-7) matched = true;
            CHECK(matched);
        }
    }
}
