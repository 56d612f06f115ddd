#include "tbill/folding.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace tbill {

Isometry Isometry::rotation_about(Point2 c, double angle) {
  const double cs = std::cos(angle);
  const double sn = std::sin(angle);
  Isometry r{cs, -sn, sn, cs, {}};
  r.offset = c - r.linear(c);
  return r;
}

Isometry Isometry::reflection_in_line(Point2 p, Point2 q) {
  const Vec2 u = normalized(q - p);
  Isometry r{u.x * u.x - u.y * u.y, 2.0 * u.x * u.y, 2.0 * u.x * u.y, u.y * u.y - u.x * u.x, {}};
  r.offset = p - r.linear(p);
  return r;
}

Isometry Isometry::compose(const Isometry& in) const {
  Isometry r;
  r.a11 = a11 * in.a11 + a12 * in.a21;
  r.a12 = a11 * in.a12 + a12 * in.a22;
  r.a21 = a21 * in.a11 + a22 * in.a21;
  r.a22 = a21 * in.a12 + a22 * in.a22;
  r.offset = linear(in.offset) + offset;
  return r;
}

Isometry Isometry::inverse() const {
  // Orthogonal linear part: inverse is the transpose.
  Isometry r{a11, a21, a12, a22, {}};
  r.offset = -r.linear(offset);
  return r;
}

double Isometry::max_difference(const Isometry& o) const {
  return std::max({std::abs(a11 - o.a11), std::abs(a12 - o.a12), std::abs(a21 - o.a21), std::abs(a22 - o.a22),
                   std::abs(offset.x - o.offset.x), std::abs(offset.y - o.offset.y)});
}

std::pair<Point2, Point2> chord_of(const Chord& c) {
  if (!(std::abs(c.tau) < 1.0 - kEps)) throw TangentChord("|tau| must be below 1");
  const Vec2 u = unit(c.theta);
  const Vec2 n = perp(u);
  const double h = std::sqrt(1.0 - c.tau * c.tau);
  const Point2 foot = -c.tau * n;
  return {foot - h * u, foot + h * u};
}

std::pair<TileAddress, Isometry> fold_along_path(const Tiling& t, const std::vector<int>& edges) {
  TileAddress a{0, 0, Color::White};
  Isometry f = Isometry::identity();
  for (int k : edges) {
    const Edge e = t.tile_at(a).edge(k);
    f = f.compose(Isometry::reflection_in_line(e.p, e.q));
    a = t.neighbor(a, k);
  }
  return {a, f};
}

namespace {

// Breadth-first walk over single-edge folds until `target` is reached.
Isometry bfs_fold(const Tiling& t, const TileAddress& target) {
  std::unordered_map<TileAddress, Isometry, TileAddressHash> seen;
  std::deque<TileAddress> queue;
  const TileAddress origin{0, 0, Color::White};
  seen.emplace(origin, Isometry::identity());
  queue.push_back(origin);
  while (!queue.empty()) {
    const TileAddress a = queue.front();
    queue.pop_front();
    if (a == target) return seen.at(a);
    const CyclicPolygon tile = t.tile_at(a);
    for (int k = 0; k < t.sides(); ++k) {
      const TileAddress b = t.neighbor(a, k);
      if (std::max(std::abs(b.m), std::abs(b.n)) > 8 || seen.contains(b)) continue;
      const Edge e = tile.edge(k);
      seen.emplace(b, seen.at(a).compose(Isometry::reflection_in_line(e.p, e.q)));
      queue.push_back(b);
    }
  }
  throw DegeneratePolygon("lattice neighbour not reachable through edge crossings");
}

}  // namespace

Folding::Folding(const Tiling& tiling) : tiling_(&tiling) {
  phi1_ = wrap_angle(bfs_fold(tiling, {1, 0, Color::White}).rotation_angle());
  phi2_ = wrap_angle(bfs_fold(tiling, {0, 1, Color::White}).rotation_angle());
}

double Folding::phi(std::int64_t m, std::int64_t n) const {
  return wrap_angle(std::fmod(static_cast<double>(m) * phi1_, kTwoPi) + std::fmod(static_cast<double>(n) * phi2_, kTwoPi));
}

Isometry Folding::isometry(const TileAddress& a) const {
  const Isometry rot = Isometry::rotation_about(tiling_->center(), phi(a.m, a.n));
  const Isometry shift = Isometry::translation(-tiling_->translation(a));
  if (a.color == Color::White) return rot.compose(shift);
  const Isometry mirror = Isometry::reflection_in_line(tiling_->base().vertex(0), tiling_->base().vertex(1));
  return rot.compose(mirror).compose(shift);
}

double Folding::theta_from_tile_angle(double angle, const TileAddress& a) const {
  const double p = phi(a.m, a.n);
  if (a.color == Color::White) return wrap_angle(angle + p);
  return wrap_angle(kPi + p - angle);
}

double Folding::angle_in_tile(double theta0, const TileAddress& a) const {
  const double p = phi(a.m, a.n);
  if (a.color == Color::White) return wrap_angle(theta0 - p);
  return wrap_angle(kPi + p - theta0);
}

Chord Folding::chord_through(Point2 p, Vec2 d, const TileAddress& a) const {
  const Vec2 u = normalized(d);
  const double tau = cross(u, tiling_->tile_at(a).circumcenter() - p) / tiling_->radius();
  return {tau, theta_from_tile_angle(relative_angle(u), a)};
}

std::pair<Point2, Point2> Folding::chord_points(const Chord& c) const {
  auto [p, q] = chord_of({c.tau, c.theta + tiling_->reference_angle()});
  const Point2 o = tiling_->center();
  const double r = tiling_->radius();
  return {o + r * p, o + r * q};
}

ProngCount count_prongs(const Folding& f, const VertexKey& v, Vec2 ray) {
  constexpr double kTol = 1e-10;
  const Tiling& t = f.tiling();
  const Vec2 w = normalized(ray);
  ProngCount out;
  for (const auto& inc : t.incident_tiles(v)) {
    const CyclicPolygon tile = t.tile_at(inc.tile);
    const Isometry iso = f.isometry(inc.tile);
    Vec2 w1 = normalized(iso.linear(tile.vertex(inc.corner + 1) - tile.vertex(inc.corner)));
    Vec2 w2 = normalized(iso.linear(tile.vertex(inc.corner - 1) - tile.vertex(inc.corner)));
    if (cross(w1, w2) < 0.0) std::swap(w1, w2);
    const double s1 = cross(w1, w);
    const double s2 = cross(w, w2);
    if (s1 > kTol && s2 > kTol) {
      ++out.prongs;
    } else if ((std::abs(s1) <= kTol && s2 > -kTol && dot(w1, w) > 0.0) ||
               (std::abs(s2) <= kTol && s1 > -kTol && dot(w2, w) > 0.0)) {
      out.degenerate = true;
    }
  }
  return out;
}

}  // namespace tbill
