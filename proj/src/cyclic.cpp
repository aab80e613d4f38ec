#include "armcrit/cyclic.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <sstream>

namespace armcrit {

SignString::SignString(std::vector<int> eps) : eps_(std::move(eps))
{
    for (int e : eps_)
        if (e != 1 && e != -1) throw Error("sign string entries must be +1 or -1");
}

SignString SignString::from_bits(std::size_t n, std::uint64_t bits)
{
    if (n > 63) throw Error("sign strings longer than 63 entries are not supported");
    std::vector<int> eps(n);
    for (std::size_t i = 0; i < n; ++i) eps[i] = ((bits >> i) & 1U) ? -1 : 1;
    return SignString(std::move(eps));
}

SignString SignString::parse(std::string_view text)
{
    std::vector<int> eps;
    for (char c : text) {
        if (c == '+')
            eps.push_back(1);
        else if (c == '-')
            eps.push_back(-1);
        else
            throw Error("sign strings use only '+' and '-'");
    }
    return SignString(std::move(eps));
}

int SignString::e_count() const
{
    return static_cast<int>(std::count(eps_.begin(), eps_.end(), 1));
}

SignString SignString::negated() const
{
    std::vector<int> eps = eps_;
    for (int& e : eps) e = -e;
    return SignString(std::move(eps));
}

std::uint64_t SignString::bits() const
{
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < eps_.size(); ++i)
        if (eps_[i] < 0) b |= (std::uint64_t{1} << i);
    return b;
}

std::string SignString::to_string() const
{
    std::string s;
    for (int e : eps_) s.push_back(e > 0 ? '+' : '-');
    return s;
}

std::string_view to_string(CyclicKind kind)
{
    switch (kind) {
    case CyclicKind::diacyclic: return "diacyclic";
    case CyclicKind::closed: return "closed";
    case CyclicKind::plain: return "plain";
    }
    return "plain";
}

double half_angle(double length, double radius)
{
    if (!(length > 0.0) || !(radius > 0.0)) throw InfeasibleChord("chord needs positive length and radius");
    const double s = length / (2.0 * radius);
    if (s > 1.0) {
        // tolerate rounding at the diameter
        if (s - 1.0 > 1e-14) throw InfeasibleChord("chord longer than the diameter");
        return kPi / 2.0;
    }
    return std::asin(s);
}

namespace {

double signed_half_angle_sum(const ArmLengths& arm, const SignString& signs, double radius)
{
    if (signs.size() != arm.size()) throw DimensionMismatch("sign string length differs from arm size");
    double sum = 0.0;
    for (std::size_t i = 0; i < arm.size(); ++i) sum += signs[i] * half_angle(arm[i], radius);
    return sum;
}

}  // namespace

double diacyclic_residual(const ArmLengths& arm, const SignString& signs, int k, double radius)
{
    return signed_half_angle_sum(arm, signs, radius) - (kPi / 2.0 + k * kPi);
}

double closed_residual(const ArmLengths& arm, const SignString& signs, int k, double radius)
{
    return signed_half_angle_sum(arm, signs, radius) - k * kPi;
}

InscribedFamily::InscribedFamily(std::span<const double> lengths, SignString signs)
    : lengths_(lengths.begin(), lengths.end()), signs_(std::move(signs))
{
    if (lengths_.empty()) throw Error("empty length list");
    if (signs_.size() != lengths_.size()) throw DimensionMismatch("sign string length differs from arm size");
    max_length_ = *std::max_element(lengths_.begin(), lengths_.end());
    ratios_.reserve(lengths_.size());
    for (double l : lengths_) ratios_.push_back(l == max_length_ ? 1.0 : l / max_length_);
}

std::vector<double> InscribedFamily::half_angles(double gamma) const
{
    const double s = std::sin(gamma);
    std::vector<double> alpha(ratios_.size());
    for (std::size_t i = 0; i < ratios_.size(); ++i)
        alpha[i] = ratios_[i] == 1.0 ? gamma : std::asin(std::min(1.0, ratios_[i] * s));
    return alpha;
}

double InscribedFamily::phase(double gamma) const
{
    const double s = std::sin(gamma);
    double sum = 0.0;
    for (std::size_t i = 0; i < ratios_.size(); ++i) {
        const double a = ratios_[i] == 1.0 ? gamma : std::asin(std::min(1.0, ratios_[i] * s));
        sum += signs_[i] * a;
    }
    return sum;
}

double InscribedFamily::phase_derivative(double gamma) const
{
    const double s = std::sin(gamma);
    const double c = std::cos(gamma);
    double sum = 0.0;
    for (std::size_t i = 0; i < ratios_.size(); ++i) {
        if (ratios_[i] == 1.0) {
            sum += signs_[i];
        } else {
            const double rs = ratios_[i] * s;
            sum += signs_[i] * ratios_[i] * c / std::sqrt(1.0 - rs * rs);
        }
    }
    return sum;
}

double InscribedFamily::radius(double gamma) const
{
    if (gamma <= 0.0) return std::numeric_limits<double>::infinity();
    return max_length_ / (2.0 * std::sin(gamma));
}

double InscribedFamily::gamma_for_radius(double radius) const
{
    return half_angle(max_length_, radius);
}

Placement InscribedFamily::place(double gamma) const
{
    Placement p;
    p.radius = radius(gamma);
    p.half_angles = half_angles(gamma);

    const std::size_t n = lengths_.size();
    std::vector<double> beta(n);
    double phi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double next = phi + 2.0 * signs_[i] * p.half_angles[i];
        beta[i] = 0.5 * (phi + next) + signs_[i] * (kPi / 2.0);
        phi = next;
    }
    std::vector<double> thetas(n - 1);
    for (std::size_t k = 1; k < n; ++k) thetas[k - 1] = beta[k] - beta[0];
    p.config = AngleConfig(std::move(thetas));

    if (std::isfinite(p.radius)) {
        p.center = {-p.radius * std::cos(beta[0]), p.radius * std::sin(beta[0])};
    } else {
        const double inf = std::numeric_limits<double>::infinity();
        p.center = {inf, inf};
    }
    return p;
}

PhaseGrid make_phase_grid(const InscribedFamily& family, int cells)
{
    if (cells < 2) throw Error("root scan needs at least 2 grid cells");
    PhaseGrid g;
    const std::size_t m = static_cast<std::size_t>(cells) + 1;
    g.gammas.resize(m);
    g.phase.resize(m);
    g.slope.resize(m);
    const double h = (kPi / 2.0) / cells;
    for (std::size_t j = 0; j < m; ++j) {
        g.gammas[j] = j + 1 == m ? kPi / 2.0 : static_cast<double>(j) * h;
        g.phase[j] = family.phase(g.gammas[j]);
        g.slope[j] = family.phase_derivative(g.gammas[j]);
    }
    return g;
}

namespace {

int sign_of(double v, double tol)
{
    if (v > tol) return 1;
    if (v < -tol) return -1;
    return 0;
}

/// Bisect [a, b] where f(a) has sign `sa` and f changes sign on the interval.
template <typename F>
double bisect(F&& f, double a, double b, int sa)
{
    for (int it = 0; it < 400; ++it) {
        const double m = a + 0.5 * (b - a);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (sa > 0))
            a = m;
        else
            b = m;
    }
    return a + 0.5 * (b - a);
}

}  // namespace

std::vector<double> find_phase_roots(const InscribedFamily& family, const PhaseGrid& grid,
                                     double target, double zero_tol)
{
    const std::size_t m = grid.gammas.size();
    const double ztol = zero_tol * (1.0 + std::abs(target));
    auto f = [&](double g) { return family.phase(g) - target; };

    std::vector<int> s(m);
    for (std::size_t j = 0; j < m; ++j) s[j] = sign_of(grid.phase[j] - target, ztol);
    // γ = 0 is the aligned limit; for target 0 the sign just right of it is
    // the sign of the slope there
    if (s[0] == 0) s[0] = sign_of(grid.slope[0], 0.0);

    std::vector<double> roots;
    for (std::size_t j = 0; j + 1 < m; ++j) {
        const double a = grid.gammas[j];
        const double b = grid.gammas[j + 1];
        if (s[j] * s[j + 1] < 0) {
            roots.push_back(bisect(f, a, b, s[j]));
            continue;
        }
        if (s[j] * s[j + 1] > 0 && grid.slope[j] * grid.slope[j + 1] < 0) {
            const int slope_sign = grid.slope[j] > 0.0 ? 1 : -1;
            const double g_ext =
                bisect([&](double g) { return family.phase_derivative(g); }, a, b, slope_sign);
            const double f_ext = f(g_ext);
            const int s_ext = sign_of(f_ext, ztol);
            if (s_ext == 0) {
                roots.push_back(g_ext);
            } else if (s_ext != s[j]) {
                roots.push_back(bisect(f, a, g_ext, s[j]));
                roots.push_back(bisect(f, g_ext, b, s_ext));
            }
        }
    }
    // grid points that are roots to within tolerance
    for (std::size_t j = 1; j < m; ++j) {
        if (s[j] != 0) continue;
        if (j + 1 < m && s[j - 1] * s[j + 1] < 0)
            roots.push_back(bisect(f, grid.gammas[j - 1], grid.gammas[j + 1], s[j - 1]));
        else
            roots.push_back(grid.gammas[j]);
    }

    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double x, double y) { return std::abs(x - y) <= 1e-14; }),
                roots.end());
    return roots;
}

std::vector<double> find_phase_roots(const InscribedFamily& family, double target,
                                     const RootScanOptions& options)
{
    return find_phase_roots(family, make_phase_grid(family, options.grid), target, options.zero_tol);
}

int max_branch(std::size_t n)
{
    return static_cast<int>((n + 1) / 2) + 1;
}

SolveResult solve_diacyclic(const ArmLengths& arm, const SolveOptions& options)
{
    const std::size_t n = arm.size();
    if (n > 20) throw Error("solve_diacyclic enumerates 2^n sign strings; n > 20 is not supported");
    const int kmax = max_branch(n);
    const double grad_tol = options.gradient_tol * std::max(1.0, arm.scale());

    SolveResult result;
    result.grid_points = options.scan.grid + 1;
    std::vector<DiacyclicPoint> found;

    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        InscribedFamily family(arm.values(), SignString::from_bits(n, bits));
        const PhaseGrid grid = make_phase_grid(family, options.scan.grid);
        for (int k = -kmax; k <= kmax; ++k) {
            const double target = kPi / 2.0 + k * kPi;
            for (double gamma : find_phase_roots(family, grid, target, options.scan.zero_tol)) {
                Placement p = family.place(gamma);
                DiacyclicPoint pt;
                pt.gradient_norm = area_gradient(arm, p.config).norm();
                if (!(pt.gradient_norm < grad_tol)) {
                    std::ostringstream msg;
                    msg.precision(17);
                    msg << "root at radius " << p.radius << " has gradient norm " << pt.gradient_norm;
                    result.failures.push_back({family.signs(), k, msg.str()});
                    continue;
                }
                pt.config = std::move(p.config);
                pt.cyclic.radius = p.radius;
                pt.cyclic.center = p.center;
                pt.cyclic.signs = family.signs();
                pt.cyclic.half_angles = std::move(p.half_angles);
                pt.cyclic.branch = k;
                pt.cyclic.kind = CyclicKind::diacyclic;
                pt.cyclic.gamma = gamma;
                pt.diameter_chord = std::any_of(
                    pt.cyclic.half_angles.begin(), pt.cyclic.half_angles.end(),
                    [&](double a) { return kPi / 2.0 - a < options.diameter_tol; });
                found.push_back(std::move(pt));
            }
        }
    }

    std::stable_sort(found.begin(), found.end(), [](const DiacyclicPoint& a, const DiacyclicPoint& b) {
        if (a.cyclic.signs != b.cyclic.signs) return a.cyclic.signs < b.cyclic.signs;
        if (a.cyclic.branch != b.cyclic.branch) return a.cyclic.branch < b.cyclic.branch;
        return a.cyclic.radius < b.cyclic.radius;
    });
    for (auto& pt : found) {
        const bool dup = std::any_of(result.points.begin(), result.points.end(), [&](const DiacyclicPoint& q) {
            return torus_distance(q.config, pt.config) < options.dedup_tol;
        });
        if (!dup) result.points.push_back(std::move(pt));
    }
    return result;
}

SignString orientation_signs(std::span<const Point> vertices, Point center, double tol)
{
    if (vertices.size() < 2) throw Error("orientation_signs needs at least one edge");
    std::vector<int> eps;
    eps.reserve(vertices.size() - 1);
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        const Point edge = vertices[i] - vertices[i - 1];
        const Point to_center = center - vertices[i - 1];
        const double denom = norm(edge) * norm(to_center);
        if (denom == 0.0) throw DegenerateOrientation("coincident vertices or centre on a vertex");
        const double s = cross(edge, to_center) / denom;
        if (std::abs(s) < tol)
            throw DegenerateOrientation("centre lies on the line of edge " + std::to_string(i));
        eps.push_back(s > 0.0 ? 1 : -1);
    }
    return SignString(std::move(eps));
}

std::vector<Point> symmetric_image(std::span<const Point> vertices, Point center)
{
    std::vector<Point> out;
    out.reserve(vertices.size());
    for (const Point& p : vertices) out.push_back(2.0 * center - p);
    return out;
}

int winding_number(std::span<const Point> polygon, Point p)
{
    auto is_left = [](Point a, Point b, Point q) { return cross(b - a, q - a); };
    int wn = 0;
    const std::size_t m = polygon.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point a = polygon[i];
        const Point b = polygon[(i + 1) % m];
        if (a.y <= p.y) {
            if (b.y > p.y && is_left(a, b, p) > 0.0) ++wn;
        } else if (b.y <= p.y && is_left(a, b, p) < 0.0) {
            --wn;
        }
    }
    return wn;
}

std::optional<int> closure_winding(const CyclicConfig& cyclic, double tol)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < cyclic.signs.size(); ++i) sum += cyclic.signs[i] * cyclic.half_angles[i];
    const double w = (sum + kPi / 2.0) / kPi;
    const double r = std::round(w);
    if (std::abs(w - r) > tol) return std::nullopt;
    return static_cast<int>(r);
}

namespace {

void require_diacyclic(const DiacyclicPoint& point)
{
    if (point.cyclic.kind != CyclicKind::diacyclic) throw Error("configuration is not diacyclic");
}

}  // namespace

ClosedPolygon closure(const ArmLengths& arm, const DiacyclicPoint& point)
{
    require_diacyclic(point);
    const VertexPath path = realize(arm, point.config);
    const Point o = point.cyclic.center;
    const Point v = path.vertices.back() - o;
    ClosedPolygon poly{path.vertices};
    poly.vertices.push_back(o + Point{-v.y, v.x});
    return poly;
}

ClosedPolygon duplicate(const ArmLengths& arm, const DiacyclicPoint& point)
{
    require_diacyclic(point);
    const VertexPath path = realize(arm, point.config);
    const std::span<const Point> open(path.vertices.data(), path.vertices.size() - 1);
    ClosedPolygon poly{{open.begin(), open.end()}};
    const auto image = symmetric_image(open, point.cyclic.center);
    poly.vertices.insert(poly.vertices.end(), image.begin(), image.end());
    return poly;
}

ClosureData closure_data(const ArmLengths& arm, const DiacyclicPoint& point)
{
    ClosureData d;
    d.closure = closure(arm, point);
    d.duplication = duplicate(arm, point);
    d.winding = winding_number(d.closure.vertices, point.cyclic.center);
    return d;
}

std::vector<CyclicConfig> closed_cyclic_roots(const ArmLengths& arm, const SignString& signs, int k,
                                              const RootScanOptions& options)
{
    InscribedFamily family(arm.values(), signs);
    std::vector<CyclicConfig> out;
    for (double gamma : find_phase_roots(family, k * kPi, options)) {
        Placement p = family.place(gamma);
        CyclicConfig c;
        c.radius = p.radius;
        c.center = p.center;
        c.signs = signs;
        c.half_angles = std::move(p.half_angles);
        c.branch = k;
        c.kind = CyclicKind::closed;
        c.gamma = gamma;
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace armcrit
