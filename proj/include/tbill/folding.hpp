#pragma once

#include <utility>
#include <vector>

#include "tbill/tiling.hpp"

namespace tbill {

/// Affine isometry x ↦ L·x + offset of the plane.
struct Isometry {
  double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;
  Vec2 offset;

  static Isometry identity() { return {}; }
  static Isometry rotation_about(Point2 c, double angle);
  /// Mirror in the line through p and q.
  static Isometry reflection_in_line(Point2 p, Point2 q);
  static Isometry translation(Vec2 t) { return {1.0, 0.0, 0.0, 1.0, t}; }

  Vec2 linear(Vec2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
  Point2 apply(Point2 p) const { return linear(p) + offset; }
  /// (*this ∘ inner)(x) = this(inner(x)).
  Isometry compose(const Isometry& inner) const;
  Isometry inverse() const;
  bool preserves_orientation() const { return a11 * a22 - a12 * a21 > 0.0; }
  /// Angle of the image of the +x axis.
  double rotation_angle() const { return std::atan2(a21, a11); }
  double max_difference(const Isometry& o) const;
};

/// Oriented chord of the unit disk: signed distance τ (centre on the left when τ > 0)
/// and direction θ.
struct Chord {
  double tau = 0.0;
  double theta = 0.0;
};

/// Endpoints of the chord in the unit circle centred at the origin, ordered along θ.
/// Throws TangentChord when |τ| ≥ 1 − kEps.
std::pair<Point2, Point2> chord_of(const Chord& c);

/// Global folding of a periodic tiling onto the circumdisk of P0.
///
/// Fold of White(t): x ↦ Rot_O(φ(t))(x − t). Fold of Grey(t): the same rotation
/// applied after the mirror in line AB of P0. φ on the lattice basis is obtained by
/// composing single-edge folds; every other tile follows by additivity.
class Folding {
 public:
  explicit Folding(const Tiling& tiling);

  const Tiling& tiling() const { return *tiling_; }

  /// φ(m v1 + n v2), in [0, 2π).
  double phi(std::int64_t m, std::int64_t n) const;
  double phi1() const { return phi1_; }
  double phi2() const { return phi2_; }

  Isometry isometry(const TileAddress& a) const;
  Point2 fold(Point2 p, const TileAddress& a) const { return isometry(a).apply(p); }
  /// Locates p first; throws OnEdge / OnVertex like Tiling::locate.
  Point2 fold(Point2 p) const { return fold(p, tiling_->locate(p)); }

  /// Direction, relative to AB of P0, that a trajectory with angle parameter θ0 has
  /// inside tile `a` (θ0 − φ on White tiles, π + φ − θ0 on Grey tiles).
  double angle_in_tile(double theta0, const TileAddress& a) const;
  /// Inverse of angle_in_tile for a fixed tile.
  double theta_from_tile_angle(double angle, const TileAddress& a) const;

  /// Absolute plane direction for an angle measured from AB.
  Vec2 direction(double angle) const { return unit(angle + tiling_->reference_angle()); }
  /// Angle from AB of an absolute direction.
  double relative_angle(Vec2 d) const { return wrap_angle(angle_of(d) - tiling_->reference_angle()); }

  /// Chord parameters (in the P0 frame) of the folded image of the oriented line
  /// through p with direction d inside tile a.
  Chord chord_through(Point2 p, Vec2 d, const TileAddress& a) const;
  /// Chord endpoints in plane coordinates on the circumcircle of P0.
  std::pair<Point2, Point2> chord_points(const Chord& c) const;

 private:
  const Tiling* tiling_;
  double phi1_ = 0.0;
  double phi2_ = 0.0;
};

/// Fold obtained by walking from P0 across the listed edges, composing one mirror
/// per crossing. Returns the final address with its isometry.
std::pair<TileAddress, Isometry> fold_along_path(const Tiling& t, const std::vector<int>& edges);

struct ProngCount {
  int prongs = 0;
  /// The ray runs along the fold image of a tile side.
  bool degenerate = false;
};

/// Number of tiles at vertex `v` whose folded corner contains the ray from the folded
/// vertex in direction `ray`.
ProngCount count_prongs(const Folding& f, const VertexKey& v, Vec2 ray);

}  // namespace tbill
