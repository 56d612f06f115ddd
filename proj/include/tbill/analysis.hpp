#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tbill/billiard.hpp"

namespace tbill {

/// Triangle angles over π.
struct SimplexPoint {
  std::array<double, 3> x{};
};

SimplexPoint simplex_point(const CyclicPolygon& triangle);

/// Gasket coordinates of an acute triangle: xᵢ = 1 − 2αᵢ/π. nullopt for right and
/// obtuse triangles, which lie outside the gasket.
std::optional<SimplexPoint> gasket_coordinates(const CyclicPolygon& triangle);
/// Inverse map: the acute triangle with angles π(1 − xᵢ)/2.
CyclicPolygon triangle_from_gasket(const SimplexPoint& p);

/// Fully subtractive step: the coordinate above 1/2 loses the other two and the point
/// is renormalized. nullopt (Exit) when no coordinate exceeds 1/2 + 1e-12.
std::optional<SimplexPoint> rauzy_step(const SimplexPoint& p);

/// Number of steps before Exit, capped at N.
int gasket_depth(const SimplexPoint& p, int n);
/// Same on an integer triple (projective coordinates), with exact arithmetic; a tie
/// a = b + c exits.
int gasket_depth_exact(std::array<std::int64_t, 3> v, int n);

/// Depth map over the simplex. Pixel (x, y) of a size×size grid is the point
/// (x, G − y, y − x) / G with G = size − 1; pixels with y < x lie outside (depth −1).
struct GasketGrid {
  int size = 0;
  int cap = 0;
  std::vector<int> depth;
  int at(int x, int y) const { return depth[static_cast<std::size_t>(y) * static_cast<std::size_t>(size) + static_cast<std::size_t>(x)]; }
};
GasketGrid gasket_grid(int size, int n, int threads = 0);

/// Depth of gasket_coordinates(triangle); 0 when the triangle is not acute.
int triangle_gasket_depth(const CyclicPolygon& triangle, int n);

/// Fraction of uniformly random simplex points with depth n.
double gasket_survivor_fraction(int samples, int n, std::uint64_t seed);
/// Same for triangles with angles uniform on the simplex, through triangle_gasket_depth.
double triangle_survivor_fraction(int samples, int n, std::uint64_t seed);

/// Vertices, edges and tiles of the tiling inside a closed polyline.
struct EnclosedGraph {
  std::vector<VertexKey> vertices;
  std::vector<std::pair<VertexKey, VertexKey>> edges;
  std::vector<TileAddress> tiles;
};

/// The crossing points of one period of a periodic record.
std::vector<Point2> closed_loop(const TrajectoryRecord& rec);

/// Vertices with nonzero winding number, edges with both ends inside that the loop does
/// not cross, tiles whose sides are all inside. Throws SelfIntersecting.
EnclosedGraph enclosed_region(const Tiling& t, const std::vector<Point2>& loop);
/// Throws PreconditionViolation unless rec is Periodic.
EnclosedGraph enclosed_region(const Tiling& t, const TrajectoryRecord& rec);

struct TreeReport {
  bool is_tree = false;
  int enclosed_tiles = 0;
  int vertices = 0;
  int edges = 0;
  int components = 0;
};
TreeReport tree_check(const EnclosedGraph& g);
TreeReport tree_check(const Tiling& t, const TrajectoryRecord& rec);

struct Petal {
  TileAddress first_tile;
  TileAddress last_tile;
  std::int64_t crossings = 0;
  /// First and last tile share a side ending at the vertex.
  bool adjacent_tiles = false;
  /// That side lies inside the petal.
  bool shared_edge_inside = false;
  /// The leaf meets other vertices on the way; the petal is then taken from the
  /// parallel leaf just beside it.
  bool through_other_vertices = false;
};

struct FlowerReport {
  VertexKey vertex;
  Point2 point;
  double theta = 0.0;
  double tau = 0.0;
  /// Tiles at the vertex that the singular leaf enters.
  int branches = 0;
  /// Branches whose trajectory returns to the vertex, one entry per closed petal.
  std::vector<Petal> petals;
  /// Branches that hit another vertex or ran out of steps.
  int open_branches = 0;
  /// A second petal passes through the vertex.
  bool other_petal = false;
  /// Every petal found crosses two adjacent tiles whose shared side it encloses.
  bool conjecture_holds = false;
};

/// Traces each branch of the singular leaf Γ_{τ,θ0} through `v` (τ from singular_tau)
/// until it hits a vertex. Throws NoSingularLeaf when no branch closes up at v.
FlowerReport flower_check(const Folding& f, const VertexKey& v, double theta0, std::int64_t max_steps = 100000);

struct EscapeProfile {
  std::vector<DisplacementSample> windows;
  double exponent = 0.0;
  Vec2 direction;
  double residual = 0.0;
  double speed = 0.0;
};
/// Throws PreconditionViolation for Periodic records.
EscapeProfile escape_profile(const TrajectoryRecord& rec);

enum class ShapeFamily { Triangle, Quad, Mixed };

struct SweepConfig {
  ShapeFamily family = ShapeFamily::Triangle;
  int shapes = 100;
  int starts = 10;
  /// Range of |τ|; ignored when zero_tau is set.
  double tau_min = 1e-3;
  double tau_max = 0.9;
  /// Start every trajectory at the circumcentre (τ = 0); shapes not containing it are redrawn.
  bool zero_tau = false;
  std::int64_t max_steps = 1000000;
  /// Smallest triangle angle, or smallest arc between quadrilateral vertices.
  double min_angle = 0.05;
  std::uint64_t seed = 1;
  int threads = 0;
};

struct SweepRun {
  Point2 start;
  Vec2 direction;
  double tau = 0.0;
  double theta = 0.0;
  Status status = Status::Unresolved;
  bool exact_recurrence = false;
  std::int64_t period = 0;
  std::int64_t steps = 0;
  Vec2 drift;
  double exponent = 0.0;
  double max_displacement = 0.0;
  double tau_dispersion = 0.0;
  /// Starts redrawn because the trajectory hit a vertex.
  int redrawn = 0;
};

struct SweepCell {
  int index = 0;
  CyclicPolygon shape;
  std::vector<SweepRun> runs;
  std::array<int, 5> counts{};
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepCell> cells;
  std::array<int, 5> totals{};
};

/// Per-cell random shape and starts, seeded by (seed, cell index); cells run in parallel
/// and are stored by index. Starts that hit a vertex are redrawn (up to 20 times).
SweepResult parameter_sweep(const SweepConfig& config);

CyclicPolygon random_triangle(std::uint64_t seed, double min_angle);
CyclicPolygon random_quad(std::uint64_t seed, double min_arc);

}  // namespace tbill
