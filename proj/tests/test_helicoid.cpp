#include <doctest.h>

#include <optional>
#include <random>
#include <set>

#include "tbill/billiard.hpp"
#include "tbill/helicoid.hpp"

using namespace tbill;

namespace {

const CyclicPolygon kAcute = CyclicPolygon::triangle_from_angles(70 * kPi / 180, 60 * kPi / 180, 50 * kPi / 180);
const CyclicPolygon kObtuse = CyclicPolygon::triangle_from_angles(0.4, 0.5, kPi - 0.9);
const CyclicPolygon kQuad = CyclicPolygon::quad_from_circle_positions({2.4, 1.1, -0.3, -2.0});

}  // namespace

TEST_CASE("period lattice examples") {
  const double h = std::sqrt(3.0) / 2.0;
  const Tiling eq(CyclicPolygon::from_vertices({{0, 0}, {1, 0}, {0.5, -h}}));
  const PeriodLattice l = period_lattice(eq);
  CHECK(distance(l.v1.v, {-1, 0}) < 1e-12);
  CHECK(circular_distance(l.v1.theta, 2 * kPi / 3) < 1e-12);
  CHECK(l.v3.v.x == 0.0);
  CHECK(l.v3.v.y == 0.0);
  CHECK(l.v3.theta == doctest::Approx(kTwoPi));

  const Tiling sq(CyclicPolygon::from_vertices({{0, 0}, {0, 1}, {1, 1}, {1, 0}}));
  const PeriodLattice ls = period_lattice(sq);
  CHECK(distance(ls.v1.v, {1, 1}) < 1e-12);
  CHECK(circular_distance(ls.v1.theta, kPi) < 1e-12);
}

TEST_CASE("period lattice agrees with the fold rotations of the translation lattice") {
  for (const CyclicPolygon& p : {kAcute, kObtuse, kQuad}) {
    const Tiling t(p);
    const Folding f(t);
    const PeriodLattice l = period_lattice(t);
    CHECK(distance(l.v1.v, t.v1()) < 1e-12);
    CHECK(distance(l.v2.v, t.v2()) < 1e-12);
    CHECK(circular_distance(l.v1.theta, f.phi1()) < 1e-12);
    CHECK(circular_distance(l.v2.theta, f.phi2()) < 1e-12);
  }
}

TEST_CASE("rectification") {
  for (const CyclicPolygon& p : {kAcute, kObtuse, kQuad}) {
    const Tiling t(p);
    const PeriodLattice l = period_lattice(t);
    const Rectification r = rectify(l);
    const std::array<std::array<double, 3>, 3> vs{{{l.v1.v.x, l.v1.v.y, l.v1.theta},
                                                   {l.v2.v.x, l.v2.v.y, l.v2.theta},
                                                   {l.v3.v.x, l.v3.v.y, l.v3.theta}}};
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t i = 0; i < 3; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < 3; ++k) s += r.A[i][k] * vs[j][k];
        CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    }
    // Points with equal Θ land on one plane H = const.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-10, 10);
    const double theta = 1.234;
    std::optional<double> level;
    for (int n = 0; n < 50; ++n) {
      const std::array<double, 3> x{u(rng), u(rng), theta};
      double hv = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        double ai = 0.0;
        for (std::size_t k = 0; k < 3; ++k) ai += r.A[i][k] * x[k];
        hv += r.H[i] * ai;
      }
      if (!level) level = hv;
      CHECK(std::abs(hv - *level) < 1e-10);
    }
    const Folding f(t);
    const HelicoidModel m0 = make_helicoid(f, 0.0);
    const HelicoidModel m1 = make_helicoid(f, 0.2);
    for (std::size_t i = 0; i < 3; ++i) CHECK(m0.rect.H[i] == m1.rect.H[i]);
  }
  const PeriodLattice bad{{{1, 0}, 0.5}, {{2, 0}, 1.0}, {{0, 0}, kTwoPi}};
  CHECK_THROWS_AS(rectify(bad), SingularLattice);
}

TEST_CASE("saddles and genus") {
  {
    const Tiling t(kAcute);
    const Folding f(t);
    const auto s = saddles(f, 0.0);
    REQUIRE(s.size() == 2);
    CHECK(s[0].vertex_class == s[1].vertex_class);
    for (const Saddle& x : s) {
      CHECK(x.index == -2);
      CHECK(x.prongs == 6);
      CHECK_FALSE(x.degenerate);
    }
    CHECK(circular_distance(s[0].theta, s[1].theta + kPi) < 1e-12);
    const EulerGenus g = euler_genus(f);
    CHECK(g.chi == -4);
    CHECK(g.genus == 3);
  }
  {
    const Tiling t(kQuad);
    REQUIRE(contains_circumcenter(kQuad) == CenterLocation::Inside);
    const Folding f(t);
    const auto s = saddles(f, 0.0);
    REQUIRE(s.size() == 4);
    std::set<int> classes;
    for (const Saddle& x : s) {
      CHECK(x.index == -1);
      classes.insert(x.vertex_class);
      int antipodes = 0;
      for (const Saddle& y : s) antipodes += circular_distance(x.theta, y.theta + kPi) < 1e-12 ? 1 : 0;
      CHECK(antipodes == 1);
    }
    CHECK(classes.size() == 2);
    const EulerGenus g = euler_genus(f);
    CHECK(g.chi == -4);
    CHECK(g.genus == 3);
  }
  {
    const Tiling t(kObtuse);
    const Folding f(t);
    CHECK(saddles(f, 0.0).empty());
    const EulerGenus g = euler_genus(f);
    CHECK(g.chi == 0);
    CHECK(g.genus == 1);
    CHECK(g.connectedness_assumed);
  }
  {
    const Tiling t(CyclicPolygon::triangle_from_angles(kPi / 2, 0.6, kPi / 2 - 0.6));
    const Folding f(t);
    CHECK_THROWS_AS(euler_genus(f), RightAngledDegenerate);
  }
  const Tiling t(kAcute);
  const Folding f(t);
  CHECK_THROWS_AS(euler_genus(f, 0.1), PreconditionViolation);
  CHECK_THROWS_AS(saddles(f, 1.0), TangentChord);
}

TEST_CASE("saddle levels are the singular leaf energies") {
  // The leaf of energy singular_tau(v, θ) passes through v; a saddle at θ must have τ there.
  for (const CyclicPolygon& p : {kAcute, kQuad}) {
    const Tiling t(p);
    const Folding f(t);
    for (double tau : {0.0, 0.15, -0.1}) {
      for (const Saddle& s : saddles(f, tau)) {
        const VertexKey key{s.vertex_class, 0, 0};
        CHECK(std::abs(singular_tau(f, key, s.theta) - tau) < 1e-12);
      }
    }
  }
}

TEST_CASE("trajectory points lie on the surface") {
  for (const CyclicPolygon& p : {kAcute, kObtuse, kQuad}) {
    const Tiling t(p);
    const Folding f(t);
    TraceOptions opts;
    opts.max_steps = 400;
    const TrajectoryRecord rec = trace(f, t.center() + Vec2{0.05, -0.07}, unit(0.7), opts);
    const HelicoidModel m = make_helicoid(f, rec.tau);
    for (const Crossing& c : rec.crossings) {
      CHECK(surface_membership(m, c.point, rec.theta));
      CHECK(surface_membership(m, c.point + m.lattice.v1.v, rec.theta + m.lattice.v1.theta));
      CHECK(surface_membership(m, c.point + m.lattice.v2.v, rec.theta + m.lattice.v2.theta));
    }
  }
}

TEST_CASE("membership defect matches the chord energy through the point") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-6, 6);
  std::uniform_real_distribution<double> ang(0, kTwoPi);
  for (const CyclicPolygon& p : {kAcute, kQuad}) {
    const Tiling t(p);
    const Folding f(t);
    const HelicoidModel m = make_helicoid(f, 0.25);
    int off = 0;
    for (int i = 0; i < 2000; ++i) {
      const Point2 x{u(rng), u(rng)};
      const double theta = ang(rng);
      const TileAddress a = t.locate_nearest(x);
      const double tau = f.chord_through(x, f.direction(f.angle_in_tile(theta, a)), a).tau;
      CHECK(std::abs(membership_defect(m, x, theta) - std::abs(tau - 0.25)) < 1e-9);
      if (!surface_membership(m, x, theta)) ++off;
    }
    CHECK(off > 1990);
  }
  const Tiling t(kAcute);
  const Folding f(t);
  const HelicoidModel m = make_helicoid(f, 0.0);
  CHECK_THROWS_AS(membership_defect(m, t.base().vertex(1), 0.3), NearVertex);
}

TEST_CASE("symmetries") {
  for (const CyclicPolygon& p : {kAcute, kObtuse, kQuad}) {
    const Tiling t(p);
    const Folding f(t);
    for (double tau : {0.0, 0.3, -0.45}) {
      const HelicoidModel m = make_helicoid(f, tau);
      const SymmetryReport r = check_symmetries(m, 1000, 3);
      CHECK(r.samples == 1000);
      CHECK(r.lattice_defect < 1e-7);
      CHECK(r.central_defect < 1e-7);
      CHECK(r.pairing_defect < 1e-7);
      CHECK(r.pairing_tau_defect < 1e-7);
      CHECK(r.s_defect == doctest::Approx(2 * std::abs(tau)).epsilon(1e-9));
      CHECK(r.s_symmetric == (tau == 0.0));
    }
  }
}

TEST_CASE("points of the surface over m") {
  for (const CyclicPolygon& p : {kAcute, kObtuse, kQuad}) {
    const Tiling t(p);
    const Folding f(t);
    const Point2 mid = t.reflection_center();
    // Energy of the line AB traversed against its direction (Θ = π).
    const double tau_ab = f.chord_through(mid, f.direction(kPi), {0, 0, Color::White}).tau;
    const HelicoidModel m0 = make_helicoid(f, 0.0);
    const HelicoidModel m1 = make_helicoid(f, 0.2);
    const HelicoidModel mab = make_helicoid(f, tau_ab);
    CHECK(surface_membership(m0, mid, kPi / 2));
    CHECK_FALSE(surface_membership(m1, mid, kPi / 2));
    CHECK(surface_membership(mab, mid, kPi));
    CHECK(surface_membership(m0, mid, kPi) == (std::abs(tau_ab) < 1e-7));
  }
}
