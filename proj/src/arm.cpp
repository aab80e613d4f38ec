#include "armcrit/arm.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

namespace armcrit {

double wrap_angle(double angle)
{
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // fmod of a tiny negative value can round up to exactly 2π
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double angle_diff(double a, double b)
{
    double d = std::remainder(a - b, kTwoPi);
    if (d <= -kPi) d += kTwoPi;
    return d;
}

ArmLengths::ArmLengths(std::vector<double> lengths, bool allow_single_edge)
    : lengths_(std::move(lengths))
{
    const std::size_t min_size = allow_single_edge ? 1 : 2;
    if (lengths_.size() < min_size)
        throw Error("an arm needs at least " + std::to_string(min_size) + " edges");
    for (double l : lengths_) {
        if (!(l > 0.0) || !std::isfinite(l))
            throw Error("edge lengths must be positive and finite");
    }
}

double ArmLengths::max() const
{
    return *std::max_element(lengths_.begin(), lengths_.end());
}

double ArmLengths::scale() const
{
    return std::transform_reduce(lengths_.begin(), lengths_.end(), 0.0, std::plus<>{},
                                 [](double l) { return l * l; });
}

ArmLengths perturb_lengths(const ArmLengths& arm, double amplitude, std::uint64_t seed)
{
    if (!(amplitude >= 0.0) || amplitude >= 1.0) throw Error("perturbation amplitude must lie in [0, 1)");
    if (amplitude == 0.0) return arm;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-amplitude, amplitude);
    std::vector<double> out(arm.values().begin(), arm.values().end());
    for (double& l : out) l *= 1.0 + u(rng);
    return ArmLengths(std::move(out), arm.size() == 1);
}

AngleConfig::AngleConfig(std::vector<double> thetas) : thetas_(std::move(thetas))
{
    for (double& t : thetas_) t = wrap_angle(t);
}

namespace {

void check_dims(const ArmLengths& arm, const AngleConfig& config)
{
    if (config.size() + 1 != arm.size()) {
        throw DimensionMismatch("angle configuration has " + std::to_string(config.size()) +
                                " coordinates, arm needs " + std::to_string(arm.size() - 1));
    }
}

std::vector<Point> edge_vectors(const ArmLengths& arm, const AngleConfig& config)
{
    check_dims(arm, config);
    std::vector<Point> e(arm.size());
    e[0] = {arm[0], 0.0};
    for (std::size_t i = 1; i < arm.size(); ++i)
        e[i] = {arm[i] * std::cos(config[i - 1]), arm[i] * std::sin(config[i - 1])};
    return e;
}

double shoelace(std::span<const Point> v)
{
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
    return s;
}

}  // namespace

VertexPath realize(const ArmLengths& arm, const AngleConfig& config)
{
    const auto e = edge_vectors(arm, config);
    VertexPath path;
    path.vertices.reserve(arm.size() + 1);
    Point r{};
    path.vertices.push_back(r);
    for (const Point& ei : e) {
        r = r + ei;
        path.vertices.push_back(r);
    }
    return path;
}

double oriented_area(const VertexPath& path)
{
    return shoelace(path.vertices);
}

double oriented_area(const ClosedPolygon& polygon)
{
    return shoelace(polygon.vertices);
}

Eigen::VectorXd area_gradient(const ArmLengths& arm, const AngleConfig& config)
{
    const auto e = edge_vectors(arm, config);
    const std::size_t n = e.size();
    Point total{};
    for (const Point& ei : e) total = total + ei;

    Eigen::VectorXd g(n - 1);
    Point before = e[0];
    for (std::size_t k = 1; k < n; ++k) {
        const Point after = total - before - e[k];
        g[k - 1] = dot(before - after, e[k]);
        before = before + e[k];
    }
    return g;
}

Eigen::MatrixXd area_hessian(const ArmLengths& arm, const AngleConfig& config)
{
    const auto e = edge_vectors(arm, config);
    const std::size_t n = e.size();
    Point total{};
    for (const Point& ei : e) total = total + ei;

    Eigen::MatrixXd h(n - 1, n - 1);
    Point before = e[0];
    for (std::size_t k = 1; k < n; ++k) {
        const Point after = total - before - e[k];
        h(k - 1, k - 1) = -cross(before, e[k]) - cross(e[k], after);
        for (std::size_t m = k + 1; m < n; ++m) {
            h(k - 1, m - 1) = cross(e[k], e[m]);
            h(m - 1, k - 1) = h(k - 1, m - 1);
        }
        before = before + e[k];
    }
    return h;
}

AngleConfig mirror(const AngleConfig& config)
{
    std::vector<double> t(config.values().begin(), config.values().end());
    for (double& x : t) x = -x;
    return AngleConfig(std::move(t));
}

double torus_distance(const AngleConfig& a, const AngleConfig& b)
{
    if (a.size() != b.size()) throw DimensionMismatch("torus_distance: dimension mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(angle_diff(a[i], b[i])));
    return d;
}

double realization_error(const ArmLengths& arm, const VertexPath& path)
{
    if (path.vertices.size() != arm.size() + 1)
        throw DimensionMismatch("path has the wrong number of vertices");
    double err = 0.0;
    for (std::size_t i = 0; i < arm.size(); ++i)
        err = std::max(err, std::abs(norm(path.vertices[i + 1] - path.vertices[i]) - arm[i]));
    return err;
}

CircleFit fit_circle(std::span<const Point> points)
{
    CircleFit fit;
    if (points.size() < 3) {
        fit.residual = std::numeric_limits<double>::infinity();
        return fit;
    }
    // x² + y² + D x + E y + F = 0, solved in a frame centred on the centroid
    Point c{};
    for (const Point& p : points) c = c + p;
    c = (1.0 / static_cast<double>(points.size())) * c;

    Eigen::MatrixXd a(points.size(), 3);
    Eigen::VectorXd b(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point q = points[i] - c;
        a(i, 0) = q.x;
        a(i, 1) = q.y;
        a(i, 2) = 1.0;
        b[i] = -(q.x * q.x + q.y * q.y);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(1e-12);
    if (qr.rank() < 3) {
        fit.residual = std::numeric_limits<double>::infinity();
        return fit;
    }
    const Eigen::Vector3d sol = qr.solve(b);
    const Point center{-sol[0] / 2.0, -sol[1] / 2.0};
    const double r2 = center.x * center.x + center.y * center.y - sol[2];
    if (!(r2 > 0.0)) {
        fit.residual = std::numeric_limits<double>::infinity();
        return fit;
    }
    fit.center = center + c;
    fit.radius = std::sqrt(r2);
    for (const Point& p : points)
        fit.residual = std::max(fit.residual, std::abs(norm(p - fit.center) - fit.radius));
    return fit;
}

double collinearity_residual(std::span<const Point> points)
{
    if (points.size() < 3) return 0.0;
    const Point p0 = points.front();
    Point far = p0;
    for (const Point& p : points)
        if (norm(p - p0) > norm(far - p0)) far = p;
    const double len = norm(far - p0);
    if (len == 0.0) return 0.0;
    double res = 0.0;
    for (const Point& p : points) res = std::max(res, std::abs(cross(far - p0, p - p0)) / len);
    return res;
}

}  // namespace armcrit
