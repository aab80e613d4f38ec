#include "armcrit/oracle.hpp"

#include <algorithm>
#include <limits>

namespace armcrit {

namespace {

double area_at(const ArmLengths& arm, std::vector<double> thetas)
{
    return oriented_area(realize(arm, AngleConfig(std::move(thetas))));
}

std::vector<double> as_vector(const AngleConfig& c)
{
    return {c.values().begin(), c.values().end()};
}

}  // namespace

Eigen::VectorXd fd_gradient(const ArmLengths& arm, const AngleConfig& config, double step)
{
    const auto x = as_vector(config);
    Eigen::VectorXd g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto xp = x, xm = x;
        xp[i] += step;
        xm[i] -= step;
        g[i] = (area_at(arm, xp) - area_at(arm, xm)) / (2.0 * step);
    }
    return g;
}

Eigen::MatrixXd fd_hessian(const ArmLengths& arm, const AngleConfig& config, double step)
{
    const auto x = as_vector(config);
    const std::size_t m = x.size();
    const double f0 = area_at(arm, x);
    Eigen::MatrixXd h(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        auto xp = x, xm = x;
        xp[i] += step;
        xm[i] -= step;
        h(i, i) = (area_at(arm, xp) - 2.0 * f0 + area_at(arm, xm)) / (step * step);
        for (std::size_t j = i + 1; j < m; ++j) {
            auto pp = x, pm = x, mp = x, mm = x;
            pp[i] += step; pp[j] += step;
            pm[i] += step; pm[j] -= step;
            mp[i] -= step; mp[j] += step;
            mm[i] -= step; mm[j] -= step;
            h(i, j) = (area_at(arm, pp) - area_at(arm, pm) - area_at(arm, mp) + area_at(arm, mm)) /
                      (4.0 * step * step);
        }
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < i; ++j) h(i, j) = h(j, i);
    return h;
}

namespace {

Eigen::VectorXd gradient_at(const ArmLengths& arm, const Eigen::VectorXd& x)
{
    return area_gradient(arm, AngleConfig(std::vector<double>(x.data(), x.data() + x.size())));
}

Eigen::MatrixXd fd_jacobian(const ArmLengths& arm, const Eigen::VectorXd& x)
{
    constexpr double h = 1e-6;
    const auto m = x.size();
    Eigen::MatrixXd jac(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        jac.col(i) = (gradient_at(arm, xp) - gradient_at(arm, xm)) / (2.0 * h);
    }
    return 0.5 * (jac + jac.transpose());
}

struct Refined {
    Eigen::VectorXd x;
    double gradient_norm{0.0};
    bool converged{false};
};

Refined refine(const ArmLengths& arm, Eigen::VectorXd x, const GridSpec& spec)
{
    const double threshold = spec.gradient_threshold * arm.scale();
    const auto m = x.size();
    double nu = 1e-3;
    Eigen::VectorXd g = gradient_at(arm, x);
    double gn = g.norm();
    for (int it = 0; it < spec.refine_iterations && gn >= threshold; ++it) {
        const Eigen::MatrixXd jac = fd_jacobian(arm, x);
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd rhs = -jac.transpose() * g;
        bool accepted = false;
        for (int tries = 0; tries < 30; ++tries) {
            const Eigen::MatrixXd lhs = jtj + nu * gn * Eigen::MatrixXd::Identity(m, m);
            const Eigen::VectorXd step = lhs.ldlt().solve(rhs);
            const Eigen::VectorXd xt = x + step;
            const Eigen::VectorXd gt = gradient_at(arm, xt);
            if (gt.norm() < gn) {
                x = xt;
                g = gt;
                gn = gt.norm();
                nu = std::max(nu / 4.0, 1e-12);
                accepted = true;
                break;
            }
            nu *= 8.0;
        }
        if (!accepted) break;
    }
    return {x, gn, gn < threshold};
}

}  // namespace

OracleResult grid_critical_search(const ArmLengths& arm, const GridSpec& spec)
{
    if (arm.size() > 5) throw Error("grid_critical_search is limited to n <= 5");
    if (spec.resolution < 8) throw Error("grid resolution must be at least 8");
    if (!(spec.gradient_threshold > 0.0) || !(spec.dedup_tol > 0.0)) throw Error("grid thresholds must be positive");

    const std::size_t dim = arm.dimension();
    const std::size_t res = static_cast<std::size_t>(spec.resolution);
    std::size_t total = 1;
    for (std::size_t d = 0; d < dim; ++d) total *= res;
    const double h = kTwoPi / static_cast<double>(res);

    auto decode = [&](std::size_t idx) {
        std::vector<std::size_t> c(dim);
        for (std::size_t d = dim; d-- > 0;) {
            c[d] = idx % res;
            idx /= res;
        }
        return c;
    };
    auto encode = [&](const std::vector<std::size_t>& c) {
        std::size_t idx = 0;
        for (std::size_t d = 0; d < dim; ++d) idx = idx * res + c[d];
        return idx;
    };

    std::vector<double> g2(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        const auto c = decode(idx);
        std::vector<double> th(dim);
        for (std::size_t d = 0; d < dim; ++d) th[d] = h * static_cast<double>(c[d]);
        g2[idx] = area_gradient(arm, AngleConfig(std::move(th))).squaredNorm();
    }

    std::size_t nneighbours = 1;
    for (std::size_t d = 0; d < dim; ++d) nneighbours *= 3;

    OracleResult result;
    std::vector<Refined> kept;
    for (std::size_t idx = 0; idx < total; ++idx) {
        const auto c = decode(idx);
        bool is_min = true;
        for (std::size_t nb = 0; nb < nneighbours && is_min; ++nb) {
            std::size_t t = nb;
            std::vector<std::size_t> cn(dim);
            bool self = true;
            for (std::size_t d = 0; d < dim; ++d) {
                const std::size_t off = t % 3;
                t /= 3;
                if (off != 1) self = false;
                cn[d] = (c[d] + res + off - 1) % res;
            }
            if (self) continue;
            const std::size_t j = encode(cn);
            // strict order on (value, index) breaks plateaus
            if (g2[j] < g2[idx] || (g2[j] == g2[idx] && j < idx)) is_min = false;
        }
        if (!is_min) continue;
        ++result.candidates;

        Eigen::VectorXd x(dim);
        for (std::size_t d = 0; d < dim; ++d) x[d] = h * static_cast<double>(c[d]);
        Refined r = refine(arm, x, spec);
        if (!r.converged) continue;
        for (Eigen::Index d = 0; d < r.x.size(); ++d) r.x[d] = wrap_angle(r.x[d]);
        kept.push_back(std::move(r));
    }

    std::sort(kept.begin(), kept.end(), [](const Refined& a, const Refined& b) { return a.gradient_norm < b.gradient_norm; });
    std::vector<AngleConfig> reps;
    for (const Refined& r : kept) {
        AngleConfig cfg(std::vector<double>(r.x.data(), r.x.data() + r.x.size()));
        double nearest = std::numeric_limits<double>::infinity();
        for (const AngleConfig& q : reps) nearest = std::min(nearest, torus_distance(q, cfg));
        if (nearest < spec.dedup_tol) continue;
        if (nearest < 10.0 * spec.dedup_tol)
            result.warnings.push_back("refined points cluster ambiguously; grid resolution may be too coarse");
        reps.push_back(std::move(cfg));
    }
    std::sort(reps.begin(), reps.end(), [](const AngleConfig& a, const AngleConfig& b) {
        return std::lexicographical_compare(a.values().begin(), a.values().end(), b.values().begin(),
                                            b.values().end());
    });
    result.points = std::move(reps);
    return result;
}

MatchReport match(std::span<const AngleConfig> analytic, std::span<const AngleConfig> oracle, double tol)
{
    MatchReport rep;
    rep.tolerance = tol;
    struct Cand {
        double d;
        std::size_t a, o;
    };
    std::vector<Cand> cands;
    for (std::size_t a = 0; a < analytic.size(); ++a)
        for (std::size_t o = 0; o < oracle.size(); ++o) {
            const double d = torus_distance(analytic[a], oracle[o]);
            if (d <= tol) cands.push_back({d, a, o});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        if (x.d != y.d) return x.d < y.d;
        if (x.a != y.a) return x.a < y.a;
        return x.o < y.o;
    });
    std::vector<bool> used_a(analytic.size()), used_o(oracle.size());
    for (const Cand& c : cands) {
        if (used_a[c.a] || used_o[c.o]) continue;
        used_a[c.a] = used_o[c.o] = true;
        rep.matched.push_back({c.a, c.o, c.d});
    }
    std::sort(rep.matched.begin(), rep.matched.end(), [](const MatchPair& x, const MatchPair& y) { return x.analytic < y.analytic; });
    for (std::size_t a = 0; a < analytic.size(); ++a)
        if (!used_a[a]) rep.unmatched_analytic.push_back(a);
    for (std::size_t o = 0; o < oracle.size(); ++o)
        if (!used_o[o]) rep.unmatched_oracle.push_back(o);
    return rep;
}

}  // namespace armcrit
