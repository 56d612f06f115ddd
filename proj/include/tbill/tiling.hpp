#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tbill/geom.hpp"

namespace tbill {

enum class Color : std::uint8_t { White = 0, Grey = 1 };

inline Color opposite(Color c) { return c == Color::White ? Color::Grey : Color::White; }

/// Lattice coordinates (in the basis v1, v2) plus the colour bit. White (0,0) is the
/// base tile P0, Grey (0,0) its mirror image through the reflection centre.
struct TileAddress {
  std::int64_t m = 0;
  std::int64_t n = 0;
  Color color = Color::White;

  friend bool operator==(const TileAddress&, const TileAddress&) = default;
};

struct TileAddressHash {
  std::size_t operator()(const TileAddress& a) const noexcept {
    const auto h1 = std::hash<std::int64_t>{}(a.m * 0x9E3779B97F4A7C15LL + a.n);
    return h1 ^ (static_cast<std::size_t>(a.color) << 1);
  }
};

struct LatticeOffset {
  std::int64_t m = 0;
  std::int64_t n = 0;
  friend bool operator==(const LatticeOffset&, const LatticeOffset&) = default;
};

/// A tiling vertex: lattice translate (m, n) of the representative of class `cls`.
struct VertexKey {
  int cls = 0;
  std::int64_t m = 0;
  std::int64_t n = 0;
  friend bool operator==(const VertexKey&, const VertexKey&) = default;
  friend bool operator<(const VertexKey& a, const VertexKey& b) {
    if (a.cls != b.cls) return a.cls < b.cls;
    if (a.m != b.m) return a.m < b.m;
    return a.n < b.n;
  }
};

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const noexcept {
    return std::hash<std::int64_t>{}((k.m * 0x9E3779B97F4A7C15LL + k.n) * 8 + k.cls);
  }
};

struct BBox {
  Point2 lo;
  Point2 hi;

  bool contains(Point2 p) const { return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y; }
  bool intersects(const BBox& o) const {
    return lo.x <= o.hi.x && o.lo.x <= hi.x && lo.y <= o.hi.y && o.lo.y <= hi.y;
  }
  BBox expanded(double r) const { return {{lo.x - r, lo.y - r}, {hi.x + r, hi.y + r}}; }
  static BBox around(Point2 c, double r) { return {{c.x - r, c.y - r}, {c.x + r, c.y + r}}; }
};

BBox bounding_box(std::span<const Point2> points);

/// Periodic P-tiling: the base tile P0 and its point reflection through the midpoint
/// of side c (triangles) or side a (quadrilaterals) form a fundamental domain; the
/// translation lattice is spanned by v1 = -c, v2 = -a (triangles) or v1 = a + b,
/// v2 = b + c (quadrilaterals).
class Tiling {
 public:
  struct Neighbor {
    TileAddress address;
    Edge edge;
  };
  struct Incidence {
    TileAddress tile;
    int corner = 0;
  };
  struct VertexInfo {
    VertexKey key;
    Point2 point;
    std::vector<Incidence> tiles;
  };

  explicit Tiling(CyclicPolygon base);

  const CyclicPolygon& base() const { return base_; }
  PolygonKind kind() const { return base_.kind(); }
  int sides() const { return base_.size(); }
  Point2 center() const { return base_.circumcenter(); }
  double radius() const { return base_.circumradius(); }
  /// Direction of side AB of P0; every angle parameter is measured from it.
  double reference_angle() const { return reference_angle_; }

  Point2 reflection_center() const { return reflection_center_; }
  int reflection_edge() const { return reflection_edge_; }
  Vec2 v1() const { return v1_; }
  Vec2 v2() const { return v2_; }
  Vec2 translation(std::int64_t m, std::int64_t n) const {
    return static_cast<double>(m) * v1_ + static_cast<double>(n) * v2_;
  }
  Vec2 translation(const TileAddress& a) const { return translation(a.m, a.n); }
  /// Real coordinates of `w` in the basis (v1, v2).
  std::array<double, 2> lattice_coords(Vec2 w) const;

  /// The tile of colour `c` at lattice position (0, 0).
  const CyclicPolygon& canonical(Color c) const { return c == Color::White ? base_ : mate_; }
  CyclicPolygon tile_at(const TileAddress& a) const { return canonical(a.color).translated(translation(a)); }

  /// Throws OnVertex / OnEdge when p is within kEps·R of the tiling skeleton.
  TileAddress locate(Point2 p) const;
  /// Tile whose interior is deepest at p; never throws.
  TileAddress locate_nearest(Point2 p) const;

  TileAddress neighbor(const TileAddress& a, int edge) const;
  std::vector<Neighbor> neighbors(const TileAddress& a) const;
  /// White (m, n) and Grey (m, n) + edge_shift(k) share edge k.
  LatticeOffset edge_shift(int k) const { return edge_shift_[static_cast<std::size_t>(k)]; }

  int vertex_class_count() const { return static_cast<int>(class_reps_.size()); }
  Point2 class_representative(int cls) const { return class_reps_[static_cast<std::size_t>(cls)]; }
  VertexKey vertex_key(const TileAddress& a, int corner) const;
  Point2 vertex_point(const VertexKey& k) const { return class_representative(k.cls) + translation(k.m, k.n); }
  /// Tiles meeting at the representative of `cls`, in counterclockwise order around it.
  const std::vector<Incidence>& incidences(int cls) const { return incidences_[static_cast<std::size_t>(cls)]; }
  std::vector<Incidence> incident_tiles(const VertexKey& k) const;

  std::vector<VertexInfo> vertices_in_region(const BBox& box) const;
  /// Tiles whose bounding box meets `box`.
  std::vector<TileAddress> tiles_in_region(const BBox& box) const;

 private:
  CyclicPolygon base_;
  CyclicPolygon mate_;
  double reference_angle_ = 0.0;
  Point2 reflection_center_;
  int reflection_edge_ = 0;
  Vec2 v1_;
  Vec2 v2_;
  double det_ = 0.0;
  int window_ = 3;
  std::vector<LatticeOffset> edge_shift_;
  std::vector<Point2> class_reps_;
  // corner_keys_[color][corner] relative to address (0, 0)
  std::array<std::vector<VertexKey>, 2> corner_keys_;
  std::vector<std::vector<Incidence>> incidences_;
};

}  // namespace tbill
