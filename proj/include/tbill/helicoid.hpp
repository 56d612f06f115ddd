#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tbill/folding.hpp"

namespace tbill {

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Period of the helicoid: plane translation together with the shift of Θ.
struct PeriodVector {
  Vec2 v;
  double theta = 0.0;
};

struct PeriodLattice {
  PeriodVector v1;
  PeriodVector v2;
  PeriodVector v3;
};

/// Closed-form periods: (−c, 2γ), (−a, 2α) for triangles; (a + b, −2δ), (b + c, −2α)
/// for quadrilaterals; V3 = (0, 0, 2π). Angles in [0, 2π).
PeriodLattice period_lattice(const Tiling& t);

struct Rectification {
  /// A·V_j = E_j.
  Mat3 A{};
  /// Unit normal of the images of the planes Θ = const.
  std::array<double, 3> H{};
  double det = 0.0;
};

/// Throws SingularLattice when the periods are linearly dependent.
Rectification rectify(const PeriodLattice& lattice);

struct Saddle {
  int vertex_class = 0;
  Point2 vertex;
  /// Θ-level of the singular leaf through the vertex.
  double theta = 0.0;
  /// Direction into the disk along the chord at the vertex (folded frame).
  Vec2 ray;
  int prongs = 0;
  /// 1 − prongs / 2.
  int index = 0;
  /// The ray lies on the fold image of a tile side.
  bool degenerate = false;
};

/// Critical points of the height Θ, one lattice class of vertices at a time. At each
/// vertex the chord of energy τ through it is taken in both orientations; the prong
/// count is the number of incident tiles whose folded corner contains the chord.
/// Vertices off the surface (no prong) and regular points (two prongs) are dropped.
std::vector<Saddle> saddles(const Folding& f, double tau);

struct EulerGenus {
  int chi = 0;
  int genus = 0;
  /// Connectedness of the surface is assumed, not checked.
  bool connectedness_assumed = true;
};

/// χ as the sum of saddle indices, g = (2 − χ)/2. Only τ = 0 is supported
/// (PreconditionViolation otherwise); RightAngledDegenerate when the circumcentre
/// lies on the tile boundary.
EulerGenus euler_genus(const Folding& f, double tau = 0.0);

struct HelicoidModel {
  const Folding* folding = nullptr;
  double tau = 0.0;
  PeriodLattice lattice;
  Rectification rect;
  std::vector<Saddle> saddle_list;
};

HelicoidModel make_helicoid(const Folding& f, double tau);

/// Distance, in circumradii, from the fold image of X to the line of the chord (τ, Θ).
/// Throws NearVertex within kEps of a tiling vertex.
double membership_defect(const HelicoidModel& model, Point2 x, double theta);
bool surface_membership(const HelicoidModel& model, Point2 x, double theta, double tol = 1e-7);

struct SymmetryReport {
  int samples = 0;
  double lattice_defect = 0.0;
  double central_defect = 0.0;
  /// Defect of Θ ↦ Θ + π; equals 2|τ| up to rounding.
  double s_defect = 0.0;
  bool s_symmetric = false;
  /// Largest |θ(γ) + θ(γ′) − π| over pairs γ′ through 2m − X parallel to γ.
  double pairing_defect = 0.0;
  /// Largest |τ(γ′) + τ(γ)| over the same pairs.
  double pairing_tau_defect = 0.0;
};

/// Samples on-surface points with a seeded generator and measures the defects of the
/// lattice shifts, the central symmetry (X, Θ) ↦ (2m − X, 2π − Θ) through M = (m, π),
/// the shift Θ ↦ Θ + π and the pairing of parallel trajectories through D_m.
SymmetryReport check_symmetries(const HelicoidModel& model, int n_samples, std::uint64_t seed);

}  // namespace tbill
