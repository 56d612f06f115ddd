#include "tbill/tiling.hpp"

#include <algorithm>
#include <limits>

namespace tbill {

BBox bounding_box(std::span<const Point2> points) {
  BBox b{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
         {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
  for (const Point2& p : points) {
    b.lo.x = std::min(b.lo.x, p.x);
    b.lo.y = std::min(b.lo.y, p.y);
    b.hi.x = std::max(b.hi.x, p.x);
    b.hi.y = std::max(b.hi.y, p.y);
  }
  return b;
}

namespace {

std::int64_t round_lattice(double x, const char* what) {
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-6) throw DegeneratePolygon(what);
  return static_cast<std::int64_t>(r);
}

}  // namespace

Tiling::Tiling(CyclicPolygon base) : base_(std::move(base)), mate_(base_) {
  reference_angle_ = angle_of(base_.vertex(1) - base_.vertex(0));
  if (base_.kind() == PolygonKind::Triangle) {
    reflection_edge_ = 2;
    v1_ = -base_.side(2);
    v2_ = -base_.side(0);
  } else {
    reflection_edge_ = 0;
    v1_ = base_.side(0) + base_.side(1);
    v2_ = base_.side(1) + base_.side(2);
  }
  reflection_center_ = base_.edge(reflection_edge_).midpoint();
  mate_ = base_.reflected_through(reflection_center_);
  det_ = cross(v1_, v2_);
  if (std::abs(det_) <= 1e-12 * dot(v1_, v1_) + 1e-300) throw SingularLattice("lattice basis is degenerate");
  // Points of either colour at lattice offset 0 lie within 3R of the circumcentre.
  window_ = static_cast<int>(std::ceil(3.0 * radius() * std::max(norm(v1_), norm(v2_)) / std::abs(det_))) + 1;

  for (int k = 0; k < sides(); ++k) {
    const auto c = lattice_coords(2.0 * (base_.edge(k).midpoint() - reflection_center_));
    edge_shift_.push_back({round_lattice(c[0], "edge midpoints are not lattice-compatible"),
                           round_lattice(c[1], "edge midpoints are not lattice-compatible")});
  }

  const double r = radius();
  for (int color = 0; color < 2; ++color) {
    const CyclicPolygon& tile = canonical(static_cast<Color>(color));
    for (int i = 0; i < tile.size(); ++i) {
      const Point2 p = tile.vertex(i);
      bool found = false;
      for (std::size_t cls = 0; cls < class_reps_.size() && !found; ++cls) {
        const auto c = lattice_coords(p - class_reps_[cls]);
        if (std::abs(c[0] - std::round(c[0])) < 1e-6 && std::abs(c[1] - std::round(c[1])) < 1e-6) {
          corner_keys_[static_cast<std::size_t>(color)].push_back(
              {static_cast<int>(cls), static_cast<std::int64_t>(std::round(c[0])),
               static_cast<std::int64_t>(std::round(c[1]))});
          found = true;
        }
      }
      if (!found) {
        if (color != 0) throw DegeneratePolygon("mate tile has a vertex outside the base vertex classes");
        corner_keys_[0].push_back({static_cast<int>(class_reps_.size()), 0, 0});
        class_reps_.push_back(p);
      }
    }
  }

  incidences_.resize(class_reps_.size());
  for (std::size_t cls = 0; cls < class_reps_.size(); ++cls) {
    const Point2 rep = class_reps_[cls];
    std::vector<std::pair<double, Incidence>> found;
    for (std::int64_t m = -window_; m <= window_; ++m) {
      for (std::int64_t n = -window_; n <= window_; ++n) {
        for (int color = 0; color < 2; ++color) {
          const TileAddress a{m, n, static_cast<Color>(color)};
          const CyclicPolygon tile = tile_at(a);
          for (int i = 0; i < tile.size(); ++i) {
            if (distance(tile.vertex(i), rep) <= 1e-9 * r) {
              const Point2 mid = 0.5 * (tile.vertex(i - 1) + tile.vertex(i + 1));
              found.push_back({wrap_angle(angle_of(mid - rep)), {a, i}});
            }
          }
        }
      }
    }
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& f : found) incidences_[cls].push_back(f.second);
  }
}

std::array<double, 2> Tiling::lattice_coords(Vec2 w) const {
  return {cross(w, v2_) / det_, cross(v1_, w) / det_};
}

TileAddress Tiling::locate_nearest(Point2 p) const {
  const auto c = lattice_coords(p - center());
  const auto m0 = static_cast<std::int64_t>(std::floor(c[0]));
  const auto n0 = static_cast<std::int64_t>(std::floor(c[1]));
  TileAddress best{m0, n0, Color::White};
  double best_d = -std::numeric_limits<double>::infinity();
  for (std::int64_t m = m0 - window_; m <= m0 + window_; ++m) {
    for (std::int64_t n = n0 - window_; n <= n0 + window_; ++n) {
      for (int color = 0; color < 2; ++color) {
        const TileAddress a{m, n, static_cast<Color>(color)};
        const double d = canonical(a.color).boundary_distance(p - translation(a));
        if (d > best_d) {
          best_d = d;
          best = a;
        }
      }
    }
  }
  return best;
}

TileAddress Tiling::locate(Point2 p) const {
  const TileAddress a = locate_nearest(p);
  const Point2 local = p - translation(a);
  const CyclicPolygon& tile = canonical(a.color);
  const double tol = kEps * radius();
  if (tile.boundary_distance(local) > tol) return a;
  for (const Point2& v : tile.vertices()) {
    if (distance(v, local) <= tol) throw OnVertex("point lies on a tiling vertex");
  }
  throw OnEdge("point lies on a tiling edge");
}

TileAddress Tiling::neighbor(const TileAddress& a, int edge) const {
  const LatticeOffset s = edge_shift(edge);
  if (a.color == Color::White) return {a.m + s.m, a.n + s.n, Color::Grey};
  return {a.m - s.m, a.n - s.n, Color::White};
}

std::vector<Tiling::Neighbor> Tiling::neighbors(const TileAddress& a) const {
  std::vector<Neighbor> out;
  const CyclicPolygon tile = tile_at(a);
  for (int k = 0; k < sides(); ++k) out.push_back({neighbor(a, k), tile.edge(k)});
  return out;
}

VertexKey Tiling::vertex_key(const TileAddress& a, int corner) const {
  const auto& keys = corner_keys_[static_cast<std::size_t>(a.color)];
  const VertexKey k = keys[static_cast<std::size_t>(((corner % sides()) + sides()) % sides())];
  return {k.cls, k.m + a.m, k.n + a.n};
}

std::vector<Tiling::Incidence> Tiling::incident_tiles(const VertexKey& k) const {
  std::vector<Incidence> out = incidences(k.cls);
  for (Incidence& inc : out) {
    inc.tile.m += k.m;
    inc.tile.n += k.n;
  }
  return out;
}

std::vector<Tiling::VertexInfo> Tiling::vertices_in_region(const BBox& box) const {
  std::vector<VertexInfo> out;
  for (int cls = 0; cls < vertex_class_count(); ++cls) {
    const Point2 rep = class_representative(cls);
    const std::array<Point2, 4> corners{box.lo, Point2{box.hi.x, box.lo.y}, box.hi, Point2{box.lo.x, box.hi.y}};
    double lo0 = std::numeric_limits<double>::infinity(), hi0 = -lo0, lo1 = lo0, hi1 = -lo0;
    for (const Point2& c : corners) {
      const auto lc = lattice_coords(c - rep);
      lo0 = std::min(lo0, lc[0]);
      hi0 = std::max(hi0, lc[0]);
      lo1 = std::min(lo1, lc[1]);
      hi1 = std::max(hi1, lc[1]);
    }
    for (auto m = static_cast<std::int64_t>(std::floor(lo0)); m <= static_cast<std::int64_t>(std::ceil(hi0)); ++m) {
      for (auto n = static_cast<std::int64_t>(std::floor(lo1)); n <= static_cast<std::int64_t>(std::ceil(hi1)); ++n) {
        const VertexKey key{cls, m, n};
        const Point2 p = vertex_point(key);
        if (box.contains(p)) out.push_back({key, p, incident_tiles(key)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const VertexInfo& a, const VertexInfo& b) { return a.key < b.key; });
  return out;
}

std::vector<TileAddress> Tiling::tiles_in_region(const BBox& box) const {
  std::vector<TileAddress> out;
  const std::array<Point2, 4> corners{box.lo, Point2{box.hi.x, box.lo.y}, box.hi, Point2{box.lo.x, box.hi.y}};
  double lo0 = std::numeric_limits<double>::infinity(), hi0 = -lo0, lo1 = lo0, hi1 = -lo0;
  for (const Point2& c : corners) {
    const auto lc = lattice_coords(c - center());
    lo0 = std::min(lo0, lc[0]);
    hi0 = std::max(hi0, lc[0]);
    lo1 = std::min(lo1, lc[1]);
    hi1 = std::max(hi1, lc[1]);
  }
  std::array<BBox, 2> local{bounding_box(base_.vertices()), bounding_box(mate_.vertices())};
  for (auto m = static_cast<std::int64_t>(std::floor(lo0)) - window_;
       m <= static_cast<std::int64_t>(std::ceil(hi0)) + window_; ++m) {
    for (auto n = static_cast<std::int64_t>(std::floor(lo1)) - window_;
         n <= static_cast<std::int64_t>(std::ceil(hi1)) + window_; ++n) {
      for (int color = 0; color < 2; ++color) {
        const Vec2 t = translation(m, n);
        const BBox& lb = local[static_cast<std::size_t>(color)];
        const BBox tb{lb.lo + t, lb.hi + t};
        if (tb.intersects(box)) out.push_back({m, n, static_cast<Color>(color)});
      }
    }
  }
  return out;
}

}  // namespace tbill
