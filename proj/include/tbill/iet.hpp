#pragma once

#include <string>
#include <vector>

#include "tbill/billiard.hpp"

namespace tbill {

/// One continuity interval [start, start + length) of the circle R/2πZ. On it the map
/// is x ↦ image_start + (x − start), or x ↦ image_start + length − (x − start) when flipped.
struct IETInterval {
  double start = 0.0;
  double length = 0.0;
  bool flipped = false;
  double image_start = 0.0;
  int label = 0;
};

/// Piecewise isometry of the circle, possibly orientation-reversing on some intervals.
class IETWithFlips {
 public:
  IETWithFlips() = default;
  /// Intervals must partition the circle (length defect below 1e-9); they are sorted by start.
  explicit IETWithFlips(std::vector<IETInterval> intervals);

  const std::vector<IETInterval>& intervals() const { return intervals_; }
  int size() const { return static_cast<int>(intervals_.size()); }
  std::vector<double> breakpoints() const;

  /// Index of the interval containing x. Throws HitBreakpoint within tol of a breakpoint.
  int locate(double x, double tol = kEps) const;
  double apply(double x, double tol = kEps) const;
  /// Position of the image intervals, sorted by image start: the permutation.
  std::vector<int> permutation() const;

  /// Total gap and overlap of the image intervals on the circle.
  double image_defect() const;
  /// Total gap and overlap of the domain intervals.
  double domain_defect() const;

  /// (*this ∘ inner); pieces shorter than `snap` are merged away.
  IETWithFlips compose(const IETWithFlips& inner, double snap = 1e-9) const;

 private:
  std::vector<IETInterval> intervals_;
};

struct Orbit {
  std::vector<double> points;
  std::vector<int> word;
};

/// x, f(x), ..., f^n(x) and the labels of the intervals visited by the first n points.
Orbit iterate(const IETWithFlips& f, double x, int n, double tol = kEps);

struct FirstReturn {
  double tau = 0.0;
  IETWithFlips F;
  IETWithFlips T;
};

/// Edge-to-edge return map on the circumcircle of P. The circle coordinate of an oriented
/// chord is the angle, from AB, of its forward endpoint; F sends the arc cut off by side k
/// to itself reversed: x ↦ 2t_k − 2 asin τ − x, with t_k the direction of side k.
/// Throws DegenerateChord unless every chord of energy τ crosses P.
FirstReturn first_return_iet(const CyclicPolygon& p, double tau);

/// Circle coordinate of the state just before a crossing, with Grey tiles brought back
/// onto P0 through the point reflection of the fundamental domain.
double circle_coordinate(const Folding& f, const Crossing& c);

struct CrosscheckReport {
  bool ok = false;
  int symbols = 0;
  double max_error = 0.0;
  bool words_agree = false;
  bool t_orbit_agrees = false;
  std::string failure;
};

/// Traces n crossings from (start, dir) and compares the circle coordinates and exit
/// sides with the F-orbit of the first one (tolerance 1e-6), and every second point
/// with the T-orbit.
CrosscheckReport coding_crosscheck(const Folding& f, double tau, Point2 start, Vec2 dir, int n);

}  // namespace tbill
