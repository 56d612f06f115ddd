#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tbill/folding.hpp"

namespace tbill {

enum class Status { Periodic, LinearEscape, NonLinearCandidate, Unresolved, SingularHit };

std::string_view to_string(Status s);

/// Exit of the trajectory from `tile` through side `edge`.
struct Crossing {
  TileAddress tile;
  int edge = 0;
  Point2 point;
  /// Direction inside `tile`, before refraction.
  Vec2 direction;
  /// Position along the side, 0 at its first endpoint.
  double s = 0.0;
};

struct TraceOptions {
  std::int64_t max_steps = 100000;
  bool stop_on_recurrence = true;
  bool keep_crossings = true;
  double recurrence_tol = 1e-9;
  /// Stop once the escape fit is linear, checked from this many steps on (0 disables).
  std::int64_t escape_check_from = 100000;
};

struct DisplacementSample {
  std::int64_t step = 0;
  double max_displacement = 0.0;
  Point2 position;
};

struct TrajectoryRecord {
  TileAddress start_tile;
  Point2 start;
  Vec2 start_direction;
  std::vector<Crossing> crossings;
  std::int64_t steps = 0;

  double tau = 0.0;
  double tau_min = 0.0;
  double tau_max = 0.0;
  /// Angle parameter θ(γ, P0).
  double theta = 0.0;

  Status status = Status::Unresolved;
  /// True when the status comes from an exact state recurrence.
  bool exact_recurrence = false;
  std::int64_t period = 0;
  LatticeOffset shift;
  Vec2 drift;
  std::optional<Point2> singular_vertex;

  /// Tiles entered twice before the orbit closed.
  std::int64_t repeated_tiles = 0;
  /// Smallest distance from a segment to a vertex of its tile.
  double clearance = 0.0;
  double max_displacement = 0.0;
  std::vector<DisplacementSample> displacement;

  double tau_dispersion() const { return tau_max - tau_min; }
};

/// Mirror of d in the normal of e. Throws TangentCrossing when d is (nearly) parallel to e.
Vec2 refract(Vec2 d, const Edge& e);

TrajectoryRecord trace(const Folding& f, Point2 p0, Vec2 d0, const TraceOptions& opts = {});
/// Same, with the start tile given instead of located; p0 must lie in it.
TrajectoryRecord trace(const Folding& f, const TileAddress& start, Point2 p0, Vec2 d0, const TraceOptions& opts = {});

struct EnergyReport {
  double tau = 0.0;
  double dispersion = 0.0;
};
EnergyReport energy(const TrajectoryRecord& rec);

/// Least-squares slope of log max-displacement against log step over the last decade
/// of the trace; NaN when fewer than three samples are available.
double growth_exponent(const TrajectoryRecord& rec);

struct EscapeFit {
  double exponent = 0.0;
  /// Unit vector from the start to the last sampled position.
  Vec2 direction;
  /// Largest distance of a last-decade sample from the line along `direction`,
  /// relative to the maximal displacement.
  double residual = 0.0;
  /// Displacement per step of the last sample.
  double speed = 0.0;
};
EscapeFit fit_escape(const TrajectoryRecord& rec);

/// Asymptotic-direction test: exponent in [0.95, 1.05], residual below 0.05 and a
/// displacement of at least 100 circumradii.
bool escapes_linearly(const EscapeFit& fit, double max_displacement, double radius);

/// Final status. Exact recurrences and vertex hits are kept. Otherwise LinearEscape
/// when escapes_linearly holds, NonLinearCandidate when |τ| < 1e-6, at least 1000
/// steps were taken and growth is sublinear (exponent < 0.9), else Unresolved.
Status classify(const TrajectoryRecord& rec, double radius = 1.0);

/// The tile sequence of the first period of a closed record.
std::vector<TileAddress> tile_sequence(const TrajectoryRecord& rec);

/// Re-traces the orbit with its start pushed sideways by δ. Throws PreconditionViolation
/// unless rec is Periodic and δ < clearance / 2.
bool perturb_and_compare(const Folding& f, const TrajectoryRecord& rec, double delta);

struct LeafSegment {
  TileAddress tile;
  Point2 p;
  Point2 q;
};

struct FoliationLeaf {
  double tau = 0.0;
  bool singular = false;
  std::vector<LeafSegment> segments;
};

struct Foliation {
  double theta = 0.0;
  std::vector<FoliationLeaf> leaves;
  /// Energies of leaves through tiling vertices in the region (vertices whose line
  /// enters no tile at the vertex are left out).
  std::vector<double> singular_taus;
};

/// Leaves Γ_{τ,θ0} restricted to the tiles meeting `region`: n_leaves regular energies
/// spread over (−1, 1) plus one singular leaf per tiling vertex in the region.
Foliation parallel_foliation(const Folding& f, double theta0, const BBox& region, int n_leaves);

/// Segments of the leaf Γ_{τ,θ0} inside the tiles meeting `region`.
std::vector<LeafSegment> leaf_segments(const Folding& f, double tau, double theta0, const BBox& region);

/// Energy of the line with angle parameter θ0 through the fold image of tiling vertex `v`.
double singular_tau(const Folding& f, const VertexKey& v, double theta0);

/// Prongs of that line at `v`: how many tiles at `v` the leaf actually enters.
ProngCount singular_prongs(const Folding& f, const VertexKey& v, double theta0);

}  // namespace tbill
