#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "tbill/error.hpp"

namespace tbill {

/// Global incidence tolerance, in units of the circumradius.
inline constexpr double kEps = 1e-9;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double k) { x *= k; y *= k; return *this; }
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double k) { return {k * a.x, k * a.y}; }
  friend constexpr Vec2 operator/(Vec2 a, double k) { return {a.x / k, a.y / k}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

using Point2 = Vec2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
/// Counterclockwise quarter turn.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Vec2 normalized(Vec2 a) { return a / norm(a); }
inline Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline double angle_of(Vec2 a) { return std::atan2(a.y, a.x); }
inline bool is_finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

/// Representative of `a` in [0, 2π).
double wrap_angle(double a);
/// Representative of `a` in (−π, π].
double wrap_signed(double a);
/// Distance on the circle R/2πZ, in [0, π].
double circular_distance(double a, double b);

double point_segment_distance(Point2 p, Point2 a, Point2 b);

struct Circle {
  Point2 center;
  double radius = 0.0;
};

enum class PolygonKind { Triangle, CyclicQuad };

enum class CenterLocation { Inside, Outside, Boundary };

/// Oriented side of a tile. `p` → `q` follows the side vector (a = BC for triangles,
/// a = AB for quadrilaterals, and so on around the clockwise tour).
struct Edge {
  Point2 p;
  Point2 q;
  int index = 0;

  Vec2 vector() const { return q - p; }
  double length() const { return norm(q - p); }
  Point2 midpoint() const { return 0.5 * (p + q); }
};

/// Circumcircle of the first three points; the remaining points are checked
/// against it by callers.
Circle circumcircle(std::span<const Point2> points);

/// Triangle or cyclic quadrilateral with vertices listed clockwise.
///
/// Triangle: vertices A, B, C, sides a = BC, b = CA, c = AB (edge indices 0, 1, 2),
/// angle i at vertex i. Quadrilateral: vertices A, B, C, D, sides a = AB, b = BC,
/// c = CD, d = DA (edge indices 0..3).
class CyclicPolygon {
 public:
  /// Validates clockwise convex position and concyclicity (relative tolerance 1e-9).
  static CyclicPolygon from_vertices(std::vector<Point2> vertices);

  /// Unit-circumradius triangle centred at the origin, side AB parallel to +x.
  static CyclicPolygon triangle_from_angles(double alpha, double beta, double gamma);

  /// Unit-circumradius quadrilateral from four positions on the circle, listed
  /// clockwise starting at A. A counterclockwise listing is re-read clockwise
  /// from A. The result is rotated so that AB is parallel to +x.
  static CyclicPolygon quad_from_circle_positions(std::array<double, 4> positions);

  PolygonKind kind() const { return kind_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<Point2>& vertices() const { return vertices_; }
  Point2 vertex(int i) const { return vertices_[static_cast<std::size_t>(wrap_index(i))]; }
  /// Interior angle at vertex i.
  double angle(int i) const { return angles_[static_cast<std::size_t>(wrap_index(i))]; }
  Edge edge(int k) const;
  /// Side vector with the sign conventions listed above.
  Vec2 side(int k) const { return edge(k).vector(); }
  Point2 circumcenter() const { return circle_.center; }
  double circumradius() const { return circle_.radius; }
  Point2 barycenter() const;
  double area() const;

  /// Vertex indices of edge k, in side-vector order.
  std::array<int, 2> edge_vertices(int k) const;

  CyclicPolygon translated(Vec2 v) const;
  /// Image under the point reflection x ↦ 2c − x. Labels are kept.
  CyclicPolygon reflected_through(Point2 c) const;

  bool contains(Point2 p, double tol = 0.0) const;
  /// Signed distance to the boundary, positive inside.
  double boundary_distance(Point2 p) const;

 private:
  CyclicPolygon(PolygonKind kind, std::vector<Point2> vertices);
  int wrap_index(int i) const {
    const int n = size();
    return ((i % n) + n) % n;
  }

  PolygonKind kind_ = PolygonKind::Triangle;
  std::vector<Point2> vertices_;
  std::vector<double> angles_;
  Circle circle_;
};

/// True iff opposite angles of the clockwise quadrilateral sum to π within tol.
/// Throws NonConvex when the points are not in clockwise convex position.
bool is_cyclic(std::span<const Point2, 4> quad, double tol);

CenterLocation contains_circumcenter(const CyclicPolygon& poly, double tol = kEps);

/// Mirror image of `d` across the line of `edge`.
Vec2 reflect_direction(Vec2 d, const Edge& edge);

}  // namespace tbill
