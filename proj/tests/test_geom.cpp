#include <doctest.h>

#include <random>

#include "tbill/geom.hpp"

using namespace tbill;

TEST_CASE("circumcircle of standard shapes") {
  const std::vector<Point2> eq{{0, 0}, {0.5, std::sqrt(3.0) / 2}, {1, 0}};
  const Circle c = circumcircle(eq);
  CHECK(c.radius == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

  const std::vector<Point2> sq{{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  const Circle s = circumcircle(sq);
  CHECK(s.center.x == doctest::Approx(0.5));
  CHECK(s.center.y == doctest::Approx(0.5));
  CHECK(s.radius == doctest::Approx(std::sqrt(2.0) / 2));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Point2 o{u(rng) * 10 - 5, u(rng) * 10 - 5};
    const double r = 0.1 + 3 * u(rng);
    std::vector<double> ang{u(rng), u(rng), u(rng), u(rng)};
    for (double& a : ang) a *= kTwoPi;
    std::sort(ang.begin(), ang.end(), std::greater<>());
    std::vector<Point2> pts;
    for (double a : ang) pts.push_back(o + r * unit(a));
    const Circle cc = circumcircle(pts);
    CHECK(distance(cc.center, o) < 1e-12 * 100);
    CHECK(std::abs(cc.radius - r) < 1e-12 * 100);
  }
  CHECK_THROWS_AS(circumcircle(std::vector<Point2>{{0, 0}, {1, 1}, {2, 2}}), DegeneratePolygon);
}

TEST_CASE("is_cyclic") {
  const std::array<Point2, 4> sq{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}};
  CHECK(is_cyclic(sq, 1e-9));
  const std::array<Point2, 4> para{{{0, 0}, {0.5, 1}, {1.5, 1}, {1, 0}}};
  CHECK_FALSE(is_cyclic(para, 1e-9));
  const std::array<Point2, 4> onc{{unit(2.0), unit(1.0), unit(-0.5), unit(-2.5)}};
  CHECK(is_cyclic(onc, 1e-9));
  const std::array<Point2, 4> bow{{{0, 0}, {1, 1}, {0, 1}, {1, 0}}};
  CHECK_THROWS_AS(is_cyclic(bow, 1e-9), NonConvex);
}

TEST_CASE("contains_circumcenter") {
  CHECK(contains_circumcenter(CyclicPolygon::triangle_from_angles(kPi / 3, kPi / 3, kPi / 3)) == CenterLocation::Inside);
  CHECK(contains_circumcenter(CyclicPolygon::triangle_from_angles(0.3, 0.3, kPi - 0.6)) == CenterLocation::Outside);
  CHECK(contains_circumcenter(CyclicPolygon::triangle_from_angles(kPi / 2, kPi / 3, kPi / 6)) == CenterLocation::Boundary);
}

TEST_CASE("reflect_direction") {
  const Edge h{{0, 0}, {1, 0}, 0};
  const Vec2 a = reflect_direction({0, 1}, h);
  CHECK(a.x == doctest::Approx(0.0));
  CHECK(a.y == doctest::Approx(-1.0));
  const Vec2 b = reflect_direction({1, 0}, h);
  CHECK(b.x == doctest::Approx(1.0));
  CHECK(b.y == doctest::Approx(0.0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng);
    const Vec2 r = reflect_direction(unit(t), h);
    CHECK(std::abs(r.x - std::cos(t)) < 1e-15);
    CHECK(std::abs(r.y + std::sin(t)) < 1e-15);
    const Edge e{{0.3, -1}, unit(u(rng)) * 2.0, 1};
    const Vec2 d = unit(u(rng));
    CHECK(norm(reflect_direction(reflect_direction(d, e), e) - d) < 1e-12);
  }
}

TEST_CASE("constructed polygons satisfy their invariants") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double a = 0.05 + 2.9 * u(rng);
    const double b = 0.05 + (kPi - 0.1 - a) * u(rng);
    if (kPi - a - b < 0.05) continue;
    const CyclicPolygon t = CyclicPolygon::triangle_from_angles(a, b, kPi - a - b);
    CHECK(std::abs(t.angle(0) + t.angle(1) + t.angle(2) - kPi) <= 1e-12);
    CHECK(std::abs(t.angle(0) - a) < 1e-9);
    CHECK(norm(t.side(0) + t.side(1) + t.side(2)) < 1e-12);
    CHECK(std::abs(t.side(2).y) < 1e-12);
    CHECK(t.side(2).x > 0);
    for (const Point2& p : t.vertices()) CHECK(std::abs(distance(p, t.circumcenter()) - 1.0) <= 1e-9);

    std::array<double, 4> pos{};
    for (double& p : pos) p = kTwoPi * u(rng);
    std::sort(pos.begin(), pos.end(), std::greater<>());
    try {
      const CyclicPolygon q = CyclicPolygon::quad_from_circle_positions(pos);
      CHECK(std::abs(q.angle(0) + q.angle(2) - kPi) < 1e-9);
      CHECK(std::abs(q.angle(1) + q.angle(3) - kPi) < 1e-9);
      for (const Point2& p : q.vertices()) CHECK(std::abs(distance(p, q.circumcenter()) - 1.0) <= 1e-9);
      CHECK(std::abs(q.side(0).y) < 1e-12);
    } catch (const DegeneratePolygon&) {
    }
  }
  CHECK_THROWS_AS(CyclicPolygon::from_vertices({{0, 0}, {1, 0}, {0, 1}}), NonConvex);
  CHECK_THROWS_AS(CyclicPolygon::from_vertices({{0, 0}, {0, 1}, {1, 1}, {2, 0}}), DegeneratePolygon);
}
