#include "tbill/helicoid.hpp"

#include <random>

namespace tbill {

PeriodLattice period_lattice(const Tiling& t) {
  const CyclicPolygon& p = t.base();
  PeriodLattice out;
  if (p.kind() == PolygonKind::Triangle) {
    out.v1 = {-p.side(2), wrap_angle(2.0 * p.angle(2))};
    out.v2 = {-p.side(0), wrap_angle(2.0 * p.angle(0))};
  } else {
    out.v1 = {p.side(0) + p.side(1), wrap_angle(-2.0 * p.angle(3))};
    out.v2 = {p.side(1) + p.side(2), wrap_angle(-2.0 * p.angle(0))};
  }
  out.v3 = {{0.0, 0.0}, kTwoPi};
  return out;
}

Rectification rectify(const PeriodLattice& l) {
  const Mat3 m{{{l.v1.v.x, l.v2.v.x, l.v3.v.x}, {l.v1.v.y, l.v2.v.y, l.v3.v.y}, {l.v1.theta, l.v2.theta, l.v3.theta}}};
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  double scale = 0.0;
  for (const auto& row : m) {
    for (double v : row) scale = std::max(scale, std::abs(v));
  }
  if (!(std::abs(det) > 1e-12 * scale * scale * scale)) throw SingularLattice("period vectors are linearly dependent");
  Rectification r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int i1 = (j + 1) % 3, i2 = (j + 2) % 3;
      const int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      const auto u = [&](int a, int b) { return m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };
      r.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (u(i1, j1) * u(i2, j2) - u(i1, j2) * u(i2, j1)) / det;
    }
  }
  r.det = 1.0 / det;
  const double hn = std::sqrt(l.v1.theta * l.v1.theta + l.v2.theta * l.v2.theta + l.v3.theta * l.v3.theta);
  r.H = {l.v1.theta / hn, l.v2.theta / hn, l.v3.theta / hn};
  return r;
}

std::vector<Saddle> saddles(const Folding& f, double tau) {
  if (!(std::abs(tau) < 1.0)) throw TangentChord("|tau| must be below 1");
  const Tiling& t = f.tiling();
  std::vector<Saddle> out;
  const double as = std::asin(tau);
  for (int cls = 0; cls < t.vertex_class_count(); ++cls) {
    const Point2 v = t.class_representative(cls);
    const double beta = f.relative_angle(v - t.center());
    const std::array<std::pair<double, double>, 2> levels{{{beta + as, -1.0}, {beta + kPi - as, 1.0}}};
    for (const auto& [theta, sign] : levels) {
      Saddle s;
      s.vertex_class = cls;
      s.vertex = v;
      s.theta = wrap_angle(theta);
      s.ray = sign * f.direction(theta);
      const ProngCount pc = count_prongs(f, {cls, 0, 0}, s.ray);
      s.prongs = pc.prongs;
      s.degenerate = pc.degenerate;
      if (s.prongs <= 2 && !s.degenerate) continue;
      s.index = 1 - s.prongs / 2;
      out.push_back(s);
    }
  }
  return out;
}

EulerGenus euler_genus(const Folding& f, double tau) {
  if (tau != 0.0) throw PreconditionViolation("the Euler characteristic is only computed for tau = 0");
  if (contains_circumcenter(f.tiling().base()) == CenterLocation::Boundary) {
    throw RightAngledDegenerate("circumcentre lies on the tile boundary");
  }
  EulerGenus g;
  for (const Saddle& s : saddles(f, tau)) g.chi += s.index;
  g.genus = (2 - g.chi) / 2;
  return g;
}

HelicoidModel make_helicoid(const Folding& f, double tau) {
  HelicoidModel m;
  m.folding = &f;
  m.tau = tau;
  m.lattice = period_lattice(f.tiling());
  m.rect = rectify(m.lattice);
  m.saddle_list = saddles(f, tau);
  return m;
}

double membership_defect(const HelicoidModel& model, Point2 x, double theta) {
  const Folding& f = *model.folding;
  const Tiling& t = f.tiling();
  const TileAddress a = t.locate_nearest(x);
  const CyclicPolygon tile = t.tile_at(a);
  for (const Point2& v : tile.vertices()) {
    if (distance(v, x) <= kEps * t.radius()) throw NearVertex("point is at a tiling vertex");
  }
  const Point2 y = f.fold(x, a);
  const Vec2 n = perp(f.direction(theta));
  return std::abs(dot(y - t.center(), n) / t.radius() + model.tau);
}

bool surface_membership(const HelicoidModel& model, Point2 x, double theta, double tol) {
  return membership_defect(model, x, theta) <= tol;
}

SymmetryReport check_symmetries(const HelicoidModel& model, int n_samples, std::uint64_t seed) {
  const Folding& f = *model.folding;
  const Tiling& t = f.tiling();
  const double r = t.radius();
  const Point2 m = t.reflection_center();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-5.0 * r, 5.0 * r);
  std::uniform_int_distribution<int> branch(0, 1);
  SymmetryReport rep;
  while (rep.samples < n_samples) {
    const Point2 x = t.center() + Vec2{coord(rng), coord(rng)};
    const TileAddress a = t.locate_nearest(x);
    const CyclicPolygon tile = t.tile_at(a);
    if (tile.boundary_distance(x) <= 1e-6 * r) continue;
    const Vec2 w = f.fold(x, a) - t.center();
    const double rho = norm(w) / r;
    if (rho <= std::abs(model.tau) + 1e-6) continue;
    const double phi = f.relative_angle(w);
    const double as = std::asin(model.tau / rho);
    const double theta = wrap_angle(branch(rng) == 0 ? phi + as : phi + kPi - as);
    const Point2 xc = 2.0 * m - x;
    if (t.tile_at(t.locate_nearest(xc)).boundary_distance(xc) <= 1e-6 * r) continue;
    ++rep.samples;

    for (const PeriodVector& p : {model.lattice.v1, model.lattice.v2, model.lattice.v3}) {
      rep.lattice_defect = std::max(rep.lattice_defect, membership_defect(model, x + p.v, theta + p.theta));
    }
    rep.central_defect = std::max(rep.central_defect, membership_defect(model, xc, kTwoPi - theta));
    rep.s_defect = std::max(rep.s_defect, membership_defect(model, x, theta + kPi));

    const Vec2 d = f.direction(f.angle_in_tile(theta, a));
    const TileAddress ac = t.locate_nearest(xc);
    const Chord paired = f.chord_through(xc, d, ac);
    rep.pairing_defect = std::max(rep.pairing_defect, circular_distance(theta + paired.theta, kPi));
    rep.pairing_tau_defect = std::max(rep.pairing_tau_defect, std::abs(paired.tau + model.tau));
  }
  rep.s_symmetric = rep.s_defect < 1e-7;
  return rep;
}

}  // namespace tbill
