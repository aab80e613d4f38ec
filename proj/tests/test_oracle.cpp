#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "armcrit/cyclic.hpp"
#include "armcrit/morse.hpp"
#include "armcrit/oracle.hpp"
#include "support.hpp"

using namespace armcrit;

namespace {

std::vector<AngleConfig> solver_configs(const ArmLengths& arm)
{
    std::vector<AngleConfig> out;
    for (const DiacyclicPoint& p : solve_diacyclic(arm).points) out.push_back(p.config);
    return out;
}

}  // namespace

TEST_CASE("finite differences at known points")
{
    CHECK(std::abs(fd_gradient(ArmLengths({1, 1}), AngleConfig({kPi / 2}))(0)) < 1e-9);
    const ArmLengths arm({3, 1.2, 0.7});
    CHECK(fd_gradient(arm, AngleConfig({0.0, 0.0})).norm() > 0.1);
    const Eigen::MatrixXd h = fd_hessian(arm, AngleConfig({0.4, 2.0}));
    CHECK((h - h.transpose()).norm() == 0.0);
}

TEST_CASE("matching")
{
    const std::vector<AngleConfig> none;
    CHECK(match(none, none, 1e-4).pass());

    const std::vector<AngleConfig> a{AngleConfig({0.1, 0.2}), AngleConfig({3.0, 1.0})};
    const std::vector<AngleConfig> b{AngleConfig({3.0 + 1e-6, 1.0}), AngleConfig({0.1, kTwoPi + 0.2 - 1e-7})};
    const MatchReport m = match(a, b, 1e-4);
    CHECK(m.pass());
    REQUIRE(m.matched.size() == 2);
    for (const MatchPair& p : m.matched) CHECK(p.distance < 1e-5);

    const std::vector<AngleConfig> c{AngleConfig({0.1, 0.2})};
    const MatchReport partial = match(a, c, 1e-4);
    CHECK_FALSE(partial.pass());
    CHECK(partial.unmatched_analytic.size() == 1);
    CHECK(match(c, a, 1e-4).unmatched_oracle.size() == 1);
}

TEST_CASE("grid search argument checks")
{
    GridSpec g;
    g.resolution = 4;
    CHECK_THROWS_AS(grid_critical_search(ArmLengths({1, 1, 1}), g), Error);
    CHECK_THROWS_AS(grid_critical_search(ArmLengths({1, 1, 1, 1, 1, 1})), Error);
}

TEST_CASE("generic 3-arm: 4 points matching the solver")
{
    const ArmLengths arm = perturb_lengths(ArmLengths({2, 1, 1}), 1e-6, 1);
    GridSpec g;
    g.resolution = 256;
    const OracleResult r = grid_critical_search(arm, g);
    CHECK(r.points.size() == 4);
    const auto solver = solver_configs(arm);
    CHECK(match(solver, r.points, 1e-4).pass());
}

TEST_CASE("equilateral 3-arm: 3 points")
{
    GridSpec g;
    g.resolution = 256;
    CHECK(grid_critical_search(ArmLengths({1, 1, 1}), g).points.size() == 3);
}

TEST_CASE("4-arms at 96^3")
{
    GridSpec g;
    g.resolution = 96;
    for (const ArmLengths& arm : {perturb_lengths(ArmLengths({10, 3, 2, 1}), 1e-6, 7), ArmLengths({22, 17, 21.9, 19})}) {
        const OracleResult r = grid_critical_search(arm, g);
        const auto solver = solver_configs(arm);
        CHECK(r.points.size() == solver.size());
        CHECK(match(solver, r.points, 1e-4).pass());
    }
}

TEST_CASE("oracle points are diacyclic")
{
    std::mt19937_64 rng(51);
    for (int s = 0; s < 10; ++s) {
        const std::size_t n = 3 + s % 2;
        const ArmLengths arm = testing::random_arm(rng, n);
        GridSpec g;
        g.resolution = n == 3 ? 128 : 48;
        for (const AngleConfig& c : grid_critical_search(arm, g).points) {
            const VertexPath path = realize(arm, c);
            const CircleFit fit = fit_circle(path.vertices);
            CHECK(fit.residual < 1e-6 * std::max(1.0, fit.radius));
            CHECK(norm(0.5 * (path.vertices.front() + path.vertices.back()) - fit.center) < 1e-6 * fit.radius);
        }
    }
}

TEST_CASE("grid search is stable under doubling the resolution")
{
    std::mt19937_64 rng(52);
    for (int s = 0; s < 6; ++s) {
        const ArmLengths arm = testing::random_arm(rng, 3);
        GridSpec coarse, fine;
        coarse.resolution = 64;
        fine.resolution = 128;
        const OracleResult a = grid_critical_search(arm, coarse), b = grid_critical_search(arm, fine);
        CHECK(match(a.points, b.points, 1e-4).pass());
    }
    const ArmLengths arm({3, 2.1, 1.3, 0.9});
    GridSpec coarse, fine;
    coarse.resolution = 32;
    fine.resolution = 64;
    CHECK(match(grid_critical_search(arm, coarse).points, grid_critical_search(arm, fine).points, 1e-4).pass());
}

TEST_CASE("finite-difference index agrees with the analytic index")
{
    for (const ArmLengths& arm : {perturb_lengths(ArmLengths({2, 1, 1}), 1e-6, 1), ArmLengths({22, 17, 21.9, 19})}) {
        for (const CriticalPoint& p : analyze(arm).points) {
            const NumericIndex fd = signature(fd_hessian(arm, p.config), arm.scale(), 1e-7);
            CHECK(fd.index == p.index_numeric);
        }
    }
}
