#include "armcrit/morse.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace armcrit {

std::optional<double> delta(const CyclicConfig& cyclic, double diameter_tol)
{
    double d = 0.0;
    for (std::size_t i = 0; i < cyclic.half_angles.size(); ++i) {
        const double a = cyclic.half_angles[i];
        if (kPi / 2.0 - a < diameter_tol) return std::nullopt;
        d += cyclic.signs[i] * std::tan(a);
    }
    return d;
}

namespace {

std::optional<int> index_from(int e, int omega, std::optional<double> d, double delta_tol, int closed_shift)
{
    if (!d || std::abs(*d) <= delta_tol) return std::nullopt;
    return e - 2 * omega + (*d > 0.0 ? 1 : 0) - closed_shift;
}

}  // namespace

std::optional<int> morse_index_open(const CyclicConfig& cyclic, double diameter_tol, double delta_tol)
{
    const auto omega = closure_winding(cyclic);
    if (!omega) return std::nullopt;
    return index_from(cyclic.signs.e_count(), *omega, delta(cyclic, diameter_tol), delta_tol, 0);
}

ClosedInvariants closed_invariants(const ClosedPolygon& polygon, Point center, double diameter_tol)
{
    const auto& v = polygon.vertices;
    if (v.size() < 3) throw Error("closed polygon needs at least 3 vertices");
    std::vector<Point> loop(v.begin(), v.end());
    loop.push_back(v.front());
    const SignString signs = orientation_signs(loop, center);

    ClosedInvariants inv;
    inv.e_count = signs.e_count();
    inv.winding = winding_number(v, center);
    double r = 0.0;
    for (const Point& p : v) r += norm(p - center);
    inv.radius = r / static_cast<double>(v.size());

    // tan α = (l/2) / h with h the distance from the centre to the chord; this
    // stays accurate when α is close to π/2, where arcsin(l/2ρ) does not.
    double d = 0.0;
    bool diameter = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point edge = loop[i + 1] - loop[i];
        const double l = norm(edge);
        const double h = std::abs(cross(edge, center - loop[i])) / l;
        if (h <= std::sin(diameter_tol) * inv.radius) {
            diameter = true;
            continue;
        }
        d += signs[i] * (0.5 * l / h);
    }
    if (!diameter) inv.delta = d;
    return inv;
}

std::optional<int> morse_index_closed(const ClosedPolygon& polygon, Point center, double diameter_tol,
                                      double delta_tol)
{
    const ClosedInvariants inv = closed_invariants(polygon, center, diameter_tol);
    // e − 1 − 2ω for δ > 0, e − 2 − 2ω otherwise
    return index_from(inv.e_count, inv.winding, inv.delta, delta_tol, 2);
}

NumericIndex signature(const Eigen::MatrixXd& hessian, double scale, double eigen_tol)
{
    NumericIndex out;
    if (hessian.rows() == 0) return out;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hessian, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    const double max_abs = ev.cwiseAbs().maxCoeff();
    out.min_abs_eigenvalue = ev.cwiseAbs().minCoeff();
    out.tolerance = eigen_tol * std::max(max_abs, scale);
    for (double l : out.eigenvalues) {
        if (l < -out.tolerance) ++out.index;
    }
    out.degenerate = out.min_abs_eigenvalue <= out.tolerance;
    return out;
}

NumericIndex morse_index_numeric(const ArmLengths& arm, const AngleConfig& config,
                                 const NumericIndexOptions& options)
{
    const double g = area_gradient(arm, config).norm();
    if (g > options.gradient_tol * std::max(1.0, arm.scale())) {
        std::ostringstream msg;
        msg << "not a critical point: gradient norm " << g;
        throw NotCritical(msg.str());
    }
    return signature(area_hessian(arm, config), arm.scale(), options.eigen_tol);
}

NumericIndex closed_index_numeric(const ClosedPolygon& polygon, const NumericIndexOptions& options)
{
    const auto& v = polygon.vertices;
    const std::size_t m = v.size();
    if (m < 4) throw Error("closed_index_numeric needs at least 4 vertices");

    std::vector<double> lengths(m);
    std::vector<double> beta(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Point e = v[(i + 1) % m] - v[i];
        lengths[i] = norm(e);
        beta[i] = std::atan2(e.y, e.x);
    }
    std::vector<double> thetas(m - 1);
    for (std::size_t k = 1; k < m; ++k) thetas[k - 1] = beta[k] - beta[0];
    const ArmLengths arm(lengths);
    const AngleConfig config(thetas);

    // closure constraint c(θ) = Σ e_i = 0 in the frame where edge 1 is on +x
    const std::size_t dim = m - 1;
    Eigen::MatrixXd jac(2, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        jac(0, j) = -lengths[j + 1] * std::sin(config[j]);
        jac(1, j) = lengths[j + 1] * std::cos(config[j]);
    }
    const Eigen::VectorXd grad = area_gradient(arm, config);
    const Eigen::Vector2d lambda = jac.transpose().colPivHouseholderQr().solve(grad);
    const double residual = (jac.transpose() * lambda - grad).norm();
    if (residual > options.gradient_tol * std::max(1.0, arm.scale())) {
        std::ostringstream msg;
        msg << "polygon is not critical on its closed moduli space: residual " << residual;
        throw NotCritical(msg.str());
    }

    Eigen::MatrixXd hl = area_hessian(arm, config);
    for (std::size_t j = 0; j < dim; ++j) {
        const double hx = -lengths[j + 1] * std::cos(config[j]);
        const double hy = -lengths[j + 1] * std::sin(config[j]);
        hl(j, j) -= lambda[0] * hx + lambda[1] * hy;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
    const Eigen::MatrixXd basis = svd.matrixV().rightCols(dim - 2);
    const Eigen::MatrixXd reduced = basis.transpose() * hl * basis;
    return signature(0.5 * (reduced + reduced.transpose()), arm.scale(), options.eigen_tol);
}

std::vector<int> binomial_row(int m)
{
    std::vector<int> row(static_cast<std::size_t>(m) + 1, 1);
    for (int k = 1; k < m; ++k) row[k] = row[k - 1] * (m - k + 1) / k;
    return row;
}

CriticalPoint annotate(const ArmLengths& arm, const DiacyclicPoint& point, const AnalyzeOptions& options)
{
    CriticalPoint cp;
    cp.config = point.config;
    cp.cyclic = point.cyclic;
    cp.doubled_area = oriented_area(realize(arm, point.config));
    cp.e_count = point.cyclic.signs.e_count();
    cp.delta = delta(point.cyclic, options.solve.diameter_tol);
    const auto omega = closure_winding(point.cyclic);
    cp.omega = omega ? *omega : point.cyclic.branch + 1;
    cp.gradient_norm = point.gradient_norm;
    cp.diameter_chord = point.diameter_chord;

    const NumericIndex num = signature(area_hessian(arm, point.config), arm.scale(), options.numeric.eigen_tol);
    cp.index_numeric = num.index;
    cp.degenerate = num.degenerate;
    cp.min_abs_eigenvalue = num.min_abs_eigenvalue;
    if (!cp.degenerate && omega)
        cp.index_formula = morse_index_open(point.cyclic, options.solve.diameter_tol, options.delta_tol);
    return cp;
}

MorseReport analyze(const ArmLengths& arm, const AnalyzeOptions& options)
{
    const SolveResult solved = solve_diacyclic(arm, options.solve);
    MorseReport report;
    const int n = static_cast<int>(arm.size());

    for (const BranchFailure& f : solved.failures) {
        report.solver_failed = true;
        report.warnings.push_back("branch E=" + f.signs.to_string() + " k=" + std::to_string(f.branch) +
                                  ": " + f.reason);
    }
    for (const DiacyclicPoint& p : solved.points) report.points.push_back(annotate(arm, p, options));

    std::sort(report.points.begin(), report.points.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        if (a.doubled_area != b.doubled_area) return a.doubled_area > b.doubled_area;
        return std::lexicographical_compare(a.config.values().begin(), a.config.values().end(),
                                            b.config.values().begin(), b.config.values().end());
    });

    report.counts_by_index.assign(static_cast<std::size_t>(n), 0);
    report.betti = binomial_row(n - 1);
    for (std::size_t i = 0; i < report.points.size(); ++i) {
        const CriticalPoint& cp = report.points[i];
        ++report.counts_by_index[static_cast<std::size_t>(cp.index_numeric)];
        report.euler_check += (cp.index_numeric % 2 == 0) ? 1 : -1;
        const std::string tag = "point " + std::to_string(i) + " (E=" + cp.cyclic.signs.to_string() + ")";
        if (cp.degenerate) {
            report.any_degenerate = true;
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3g", cp.min_abs_eigenvalue);
            report.warnings.push_back(tag + ": degenerate critical point, min |eigenvalue| " + buf);
        } else if (!cp.index_formula) {
            report.warnings.push_back(tag + ": index formula indeterminate, numeric index used");
        } else if (*cp.index_formula != cp.index_numeric) {
            report.warnings.push_back(tag + ": formula index " + std::to_string(*cp.index_formula) +
                                      " differs from numeric index " + std::to_string(cp.index_numeric));
        }
    }
    report.perfect = !report.any_degenerate && report.counts_by_index == report.betti;
    return report;
}

namespace {

/// Real roots of d³ − p d − q = 0 for p > 0 with 4p³ ≥ 27q² (always the case
/// here), polished by Newton.
std::vector<double> depressed_cubic_roots(double p, double q)
{
    const double m = 2.0 * std::sqrt(p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    std::vector<double> roots;
    for (int k = 0; k < 3; ++k) {
        double d = m * std::cos(phi - 2.0 * kPi * k / 3.0);
        for (int it = 0; it < 4; ++it) {
            const double f = d * d * d - p * d - q;
            const double df = 3.0 * d * d - p;
            if (std::abs(df) < 1e-8 * p) break;  // double root: Newton stalls
            d -= f / df;
        }
        roots.push_back(d);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<Point> circle_intersections(Point c0, double r0, Point c1, double r1)
{
    const double dist = norm(c1 - c0);
    if (dist == 0.0) return {};
    const double a = (r0 * r0 - r1 * r1 + dist * dist) / (2.0 * dist);
    double h2 = r0 * r0 - a * a;
    if (h2 < -1e-12 * r0 * r0) return {};
    const double h = std::sqrt(std::max(0.0, h2));
    const Point u = (1.0 / dist) * (c1 - c0);
    const Point base = c0 + a * u;
    const Point perp{-u.y, u.x};
    return {base + h * perp, base - h * perp};
}

}  // namespace

ThreeArmCubic cubic_3arm(double l1, double l2, double l3)
{
    static_cast<void>(ArmLengths({l1, l2, l3}));  // validates the lengths
    const double p = l1 * l1 + l2 * l2 + l3 * l3;
    const double q = 2.0 * l1 * l2 * l3;
    const double len_tol = 1e-9 * std::max({l1, l2, l3});

    ThreeArmCubic out;
    for (int sign : {+1, -1}) {
        for (double d : depressed_cubic_roots(p, sign * q)) {
            const bool feasible = d >= std::max(l1, l3) - len_tol;
            out.roots.push_back({d, sign, feasible});
            if (!feasible) continue;

            const double h1 = std::sqrt(std::max(0.0, d * d - l1 * l1));
            for (int side : {+1, -1}) {
                const Point r1{l1, 0.0};
                const Point r3{l1, side * h1};
                const Point center = 0.5 * r3;
                const auto cands = circle_intersections(center, d / 2.0, r3, l3);
                const Point* best = nullptr;
                double best_err = 0.0;
                for (const Point& c : cands) {
                    const double err = std::abs(norm(c - r1) - l2);
                    if (!best || err < best_err) {
                        best = &c;
                        best_err = err;
                    }
                }
                if (!best || best_err > 1e-6 * std::max({l1, l2, l3})) continue;
                const Point e2 = *best - r1;
                const Point e3 = r3 - *best;
                AngleConfig cfg({std::atan2(e2.y, e2.x), std::atan2(e3.y, e3.x)});
                const bool dup = std::any_of(out.configs.begin(), out.configs.end(), [&](const AngleConfig& c) {
                    return torus_distance(c, cfg) < 1e-6;
                });
                if (!dup) {
                    out.configs.push_back(cfg);
                    out.config_lengths.push_back(d);
                }
            }
        }
    }
    return out;
}

}  // namespace armcrit
