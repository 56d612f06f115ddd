#include "tbill/geom.hpp"

#include <algorithm>
#include <limits>

namespace tbill {

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double wrap_signed(double a) {
  double r = wrap_angle(a);
  return r > kPi ? r - kTwoPi : r;
}

double circular_distance(double a, double b) { return std::abs(wrap_signed(a - b)); }

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

Circle circumcircle(std::span<const Point2> points) {
  if (points.size() < 3) throw DegeneratePolygon("circumcircle needs at least three points");
  const Point2 a = points[0];
  const Vec2 b = points[1] - a;
  const Vec2 c = points[2] - a;
  const double scale = std::max({dot(b, b), dot(c, c), dot(c - b, c - b)});
  const double d = 2.0 * cross(b, c);
  if (!(scale > 0.0) || std::abs(d) <= 1e-12 * scale) {
    throw DegeneratePolygon("vertices are (nearly) collinear");
  }
  const double bb = dot(b, b);
  const double cc = dot(c, c);
  const Vec2 u{(c.y * bb - b.y * cc) / d, (b.x * cc - c.x * bb) / d};
  return {a + u, norm(u)};
}

namespace {

double interior_angle(Point2 prev, Point2 at, Point2 next) {
  const Vec2 u = prev - at;
  const Vec2 v = next - at;
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

// Every turn of a clockwise convex polygon is a right turn.
void require_clockwise_convex(std::span<const Point2> v) {
  const std::size_t n = v.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, norm(v[(i + 1) % n] - v[i]));
  if (!(scale > 0.0)) throw DegeneratePolygon("polygon has coincident vertices");
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = v[(i + 1) % n] - v[i];
    const Vec2 e1 = v[(i + 2) % n] - v[(i + 1) % n];
    const double turn = cross(e0, e1);
    if (std::abs(turn) <= 1e-12 * scale * scale) throw DegeneratePolygon("three consecutive vertices are collinear");
    if (turn > 0.0) throw NonConvex("vertices are not in clockwise convex position");
  }
}

}  // namespace

CyclicPolygon::CyclicPolygon(PolygonKind kind, std::vector<Point2> vertices)
    : kind_(kind), vertices_(std::move(vertices)) {
  const int n = size();
  angles_.resize(vertices_.size());
  for (int i = 0; i < n; ++i) {
    angles_[static_cast<std::size_t>(i)] = interior_angle(vertex(i - 1), vertex(i), vertex(i + 1));
  }
  circle_ = circumcircle(vertices_);
}

CyclicPolygon CyclicPolygon::from_vertices(std::vector<Point2> vertices) {
  if (vertices.size() != 3 && vertices.size() != 4) {
    throw DegeneratePolygon("only triangles and quadrilaterals are supported");
  }
  for (const Point2& p : vertices) {
    if (!is_finite(p)) throw DegeneratePolygon("non-finite vertex");
  }
  require_clockwise_convex(vertices);
  const PolygonKind kind = vertices.size() == 3 ? PolygonKind::Triangle : PolygonKind::CyclicQuad;
  CyclicPolygon poly(kind, std::move(vertices));
  for (const Point2& p : poly.vertices_) {
    if (std::abs(distance(p, poly.circle_.center) - poly.circle_.radius) > 1e-9 * poly.circle_.radius) {
      throw DegeneratePolygon("quadrilateral is not cyclic");
    }
  }
  return poly;
}

CyclicPolygon CyclicPolygon::triangle_from_angles(double alpha, double beta, double gamma) {
  if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0)) throw DegeneratePolygon("triangle angles must be positive");
  if (std::abs(alpha + beta + gamma - kPi) > 1e-9) throw DegeneratePolygon("triangle angles must sum to pi");
  gamma = kPi - alpha - beta;
  const double pa = kPi / 2 + gamma;
  const double pb = kPi / 2 - gamma;
  const double pc = pb - 2.0 * alpha;
  return from_vertices({unit(pa), unit(pb), unit(pc)});
}

CyclicPolygon CyclicPolygon::quad_from_circle_positions(std::array<double, 4> p) {
  auto clockwise_turns = [](const std::array<double, 4>& q) {
    double total = 0.0;
    for (std::size_t i = 0; i < 4; ++i) total += wrap_angle(q[i] - q[(i + 1) % 4]);
    return total;
  };
  if (std::abs(clockwise_turns(p) - kTwoPi) > 1e-9) {
    const std::array<double, 4> reversed{p[0], p[3], p[2], p[1]};
    if (std::abs(clockwise_turns(reversed) - kTwoPi) > 1e-9) {
      throw NonConvex("circle positions do not form a simple quadrilateral");
    }
    p = reversed;
  }
  std::array<double, 4> gaps{};
  for (std::size_t i = 0; i < 4; ++i) {
    gaps[i] = wrap_angle(p[i] - p[(i + 1) % 4]);
    if (gaps[i] < 1e-6) throw DegeneratePolygon("coincident circle positions");
  }
  // Rotate so that the chord A -> B points along +x.
  const double pa = kPi / 2 + gaps[0] / 2;
  std::vector<Point2> v;
  double pos = pa;
  for (std::size_t i = 0; i < 4; ++i) {
    v.push_back(unit(pos));
    pos -= gaps[i];
  }
  return from_vertices(std::move(v));
}

std::array<int, 2> CyclicPolygon::edge_vertices(int k) const {
  if (kind_ == PolygonKind::Triangle) {
    switch (((k % 3) + 3) % 3) {
      case 0: return {1, 2};
      case 1: return {2, 0};
      default: return {0, 1};
    }
  }
  const int i = ((k % 4) + 4) % 4;
  return {i, (i + 1) % 4};
}

Edge CyclicPolygon::edge(int k) const {
  const auto [i, j] = edge_vertices(k);
  return {vertex(i), vertex(j), ((k % size()) + size()) % size()};
}

Point2 CyclicPolygon::barycenter() const {
  Point2 s;
  for (const Point2& p : vertices_) s += p;
  return s / static_cast<double>(vertices_.size());
}

double CyclicPolygon::area() const {
  double twice = 0.0;
  for (int i = 0; i < size(); ++i) twice += cross(vertex(i), vertex(i + 1));
  return 0.5 * std::abs(twice);
}

CyclicPolygon CyclicPolygon::translated(Vec2 t) const {
  CyclicPolygon out = *this;
  for (Point2& p : out.vertices_) p += t;
  out.circle_.center += t;
  return out;
}

CyclicPolygon CyclicPolygon::reflected_through(Point2 c) const {
  CyclicPolygon out = *this;
  for (Point2& p : out.vertices_) p = 2.0 * c - p;
  out.circle_.center = 2.0 * c - out.circle_.center;
  return out;
}

double CyclicPolygon::boundary_distance(Point2 p) const {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < size(); ++k) {
    const Point2 a = vertex(k);
    const Vec2 dir = vertex(k + 1) - a;
    best = std::min(best, -cross(dir, p - a) / norm(dir));
  }
  return best;
}

bool CyclicPolygon::contains(Point2 p, double tol) const { return boundary_distance(p) >= -tol; }

bool is_cyclic(std::span<const Point2, 4> quad, double tol) {
  require_clockwise_convex(quad);
  const double alpha = interior_angle(quad[3], quad[0], quad[1]);
  const double gamma = interior_angle(quad[1], quad[2], quad[3]);
  return std::abs(alpha + gamma - kPi) <= tol;
}

CenterLocation contains_circumcenter(const CyclicPolygon& poly, double tol) {
  const double d = poly.boundary_distance(poly.circumcenter());
  if (std::abs(d) <= tol * poly.circumradius()) return CenterLocation::Boundary;
  return d > 0.0 ? CenterLocation::Inside : CenterLocation::Outside;
}

Vec2 reflect_direction(Vec2 d, const Edge& edge) {
  const Vec2 t = normalized(edge.vector());
  return 2.0 * dot(d, t) * t - d;
}

}  // namespace tbill
