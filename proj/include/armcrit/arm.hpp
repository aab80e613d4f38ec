#pragma once
/**
 * @file   arm.hpp
 * @brief  Open planar chains ("robot arms"): configurations, oriented area and
 *         its derivatives on the moduli torus.
 *
 * A configuration of an arm with edge lengths l_1..l_n is pinned by
 * r_0 = (0,0) and r_1 = (l_1, 0). The remaining freedom is the direction of
 * edges 2..n relative to edge 1, so the moduli space is the torus (S^1)^(n-1).
 *
 * Area convention: every area quantity in this library is the DOUBLED oriented
 * area 2A, i.e. the plain shoelace sum over the polygon r_0 r_1 ... r_n closed
 * by the connecting side r_n r_0. Gradients and Hessians are derivatives of 2A.
 */

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace armcrit {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

struct Point {
    double x{0.0};
    double y{0.0};

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Point&, const Point&) = default;
};

inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }

/// Wrap to [0, 2π).
double wrap_angle(double angle);

/// Signed circular difference a - b in (-π, π].
double angle_diff(double a, double b);

/// Positive edge lengths of an open chain, n >= 2 unless constructed with
/// `allow_single_edge` (a lone bar has a zero-dimensional moduli space).
class ArmLengths {
public:
    explicit ArmLengths(std::vector<double> lengths, bool allow_single_edge = false);

    std::size_t size() const { return lengths_.size(); }
    double operator[](std::size_t i) const { return lengths_[i]; }
    std::span<const double> values() const { return lengths_; }

    double max() const;
    /// Natural scale of the area function: Σ l_i².
    double scale() const;
    /// Dimension of the moduli torus, n - 1.
    std::size_t dimension() const { return lengths_.size() - 1; }

    friend bool operator==(const ArmLengths&, const ArmLengths&) = default;

private:
    std::vector<double> lengths_;
};

/// A point of the moduli torus: thetas[k] is the direction of edge k+2
/// measured from edge 1, reduced to [0, 2π).
class AngleConfig {
public:
    AngleConfig() = default;
    explicit AngleConfig(std::vector<double> thetas);

    std::size_t size() const { return thetas_.size(); }
    double operator[](std::size_t i) const { return thetas_[i]; }
    std::span<const double> values() const { return thetas_; }

private:
    std::vector<double> thetas_;
};

/// Multiplies each length by (1 + u_i), u_i uniform in [−amplitude, amplitude],
/// drawn from a 64-bit Mersenne Twister seeded with `seed`.
ArmLengths perturb_lengths(const ArmLengths& arm, double amplitude, std::uint64_t seed);

/// Vertices r_0..r_n of a realized chain.
struct VertexPath {
    std::vector<Point> vertices;
};

/// Vertices p_1..p_n of a closed polygon; the edge p_n p_1 is implied.
struct ClosedPolygon {
    std::vector<Point> vertices;
};

/// Place the chain in the moduli convention r_0 = (0,0), r_1 = (l_1, 0).
VertexPath realize(const ArmLengths& arm, const AngleConfig& config);

/// Doubled oriented area of the chain closed by its connecting side.
double oriented_area(const VertexPath& path);

/// Doubled oriented area (shoelace) of a closed polygon.
double oriented_area(const ClosedPolygon& polygon);

/// Gradient of 2A with respect to the n-1 moduli angles:
///   ∂(2A)/∂θ_k = (Σ_{i<k} e_i − Σ_{i>k} e_i) · e_k.
Eigen::VectorXd area_gradient(const ArmLengths& arm, const AngleConfig& config);

/// Hessian of 2A. Off-diagonal entries are e_j × e_k (j < k); the diagonal is
/// −Σ_{i<k} e_i × e_k − Σ_{i>k} e_k × e_i.
Eigen::MatrixXd area_hessian(const ArmLengths& arm, const AngleConfig& config);

/// Reflection across the x-axis, θ ↦ −θ. Negates the oriented area.
AngleConfig mirror(const AngleConfig& config);

/// Max over coordinates of the circular distance.
double torus_distance(const AngleConfig& a, const AngleConfig& b);

/// Largest |l_i - |r_{i-1} r_i||.
double realization_error(const ArmLengths& arm, const VertexPath& path);

struct CircleFit {
    Point center;
    double radius{0.0};
    double residual{0.0};  ///< max | |v - center| - radius | over the vertices
};

/// Least-squares (Kåsa) circle through the points. Residual is infinite when
/// the points are (numerically) collinear.
CircleFit fit_circle(std::span<const Point> points);

/// Largest distance from a vertex to the line through the first point and the
/// point farthest from it (length units).
double collinearity_residual(std::span<const Point> points);

}  // namespace armcrit
