#include <doctest.h>

#include <random>

#include "tbill/tiling.hpp"

using namespace tbill;

namespace {

CyclicPolygon equilateral() { return CyclicPolygon::triangle_from_angles(kPi / 3, kPi / 3, kPi / 3); }

std::vector<CyclicPolygon> sample_tiles() {
  return {equilateral(), CyclicPolygon::triangle_from_angles(1.2, 1.0, kPi - 2.2),
          CyclicPolygon::triangle_from_angles(0.4, 0.5, kPi - 0.9),
          CyclicPolygon::quad_from_circle_positions({2.4, 1.1, -0.3, -2.0}),
          CyclicPolygon::quad_from_circle_positions({1.0, 0.2, -1.5, -3.5})};
}

}  // namespace

TEST_CASE("tile_at basics") {
  const Tiling t(equilateral());
  const CyclicPolygon w = t.tile_at({0, 0, Color::White});
  for (int i = 0; i < 3; ++i) CHECK(w.vertex(i) == t.base().vertex(i));
  const CyclicPolygon g = t.tile_at({0, 0, Color::Grey});
  for (int i = 0; i < 3; ++i) CHECK(distance(g.vertex(i), 2.0 * t.reflection_center() - t.base().vertex(i)) < 1e-15);
  const CyclicPolygon s = t.tile_at({1, 0, Color::White});
  for (int i = 0; i < 3; ++i) CHECK(distance(s.vertex(i), t.base().vertex(i) - t.base().side(2)) < 1e-15);

  for (const CyclicPolygon& p : sample_tiles()) {
    const Tiling tt(p);
    const TileAddress a{-2, 5, Color::Grey};
    const TileAddress b{1, 8, Color::Grey};
    const Vec2 d = tt.translation(3, 3);
    for (int i = 0; i < p.size(); ++i) {
      const Vec2 diff = tt.tile_at(b).vertex(i) - tt.tile_at(a).vertex(i) - d;
      CHECK(std::abs(diff.x) <= 1e-12);
      CHECK(std::abs(diff.y) <= 1e-12);
    }
  }
}

TEST_CASE("locate") {
  for (const CyclicPolygon& p : sample_tiles()) {
    const Tiling t(p);
    CHECK(t.locate(p.barycenter()) == TileAddress{0, 0, Color::White});
    CHECK(t.locate(t.canonical(Color::Grey).barycenter()) == TileAddress{0, 0, Color::Grey});
    CHECK(t.locate(p.barycenter() + t.translation(3, 2)) == TileAddress{3, 2, Color::White});
    for (std::int64_t m = -4; m <= 4; ++m) {
      for (std::int64_t n = -4; n <= 4; ++n) {
        for (Color c : {Color::White, Color::Grey}) {
          const TileAddress a{m, n, c};
          CHECK(t.locate(t.tile_at(a).barycenter()) == a);
        }
      }
    }
    CHECK_THROWS_AS(t.locate(p.vertex(1)), OnVertex);
    CHECK_THROWS_AS(t.locate(p.edge(0).midpoint()), OnEdge);
  }
}

TEST_CASE("neighbors share edges and alternate colours") {
  for (const CyclicPolygon& p : sample_tiles()) {
    const Tiling t(p);
    for (Color c : {Color::White, Color::Grey}) {
      const TileAddress a{2, -1, c};
      const auto nb = t.neighbors(a);
      CHECK(nb.size() == static_cast<std::size_t>(p.size()));
      for (int k = 0; k < p.size(); ++k) {
        const auto& [b, e] = nb[static_cast<std::size_t>(k)];
        CHECK(b.color != a.color);
        CHECK(t.neighbor(b, k) == a);
        const Edge f = t.tile_at(b).edge(k);
        CHECK(distance(f.p, e.q) < 1e-12);
        CHECK(distance(f.q, e.p) < 1e-12);
      }
    }
  }
}

TEST_CASE("vertices_in_region") {
  for (const CyclicPolygon& p : sample_tiles()) {
    const Tiling t(p);
    const auto one = t.vertices_in_region(BBox::around(p.vertex(0), 1e-3));
    REQUIRE(one.size() == 1);
    CHECK(distance(one[0].point, p.vertex(0)) < 1e-12);

    const BBox box{{-1.3, -0.7}, {1.1, 1.6}};
    std::vector<Point2> brute;
    for (std::int64_t m = -12; m <= 12; ++m) {
      for (std::int64_t n = -12; n <= 12; ++n) {
        for (Color c : {Color::White, Color::Grey}) {
          const CyclicPolygon tile = t.tile_at({m, n, c});
          for (const Point2& v : tile.vertices()) {
            if (!box.contains(v)) continue;
            bool dup = false;
            for (const Point2& w : brute) dup = dup || distance(v, w) < 1e-9;
            if (!dup) brute.push_back(v);
          }
        }
      }
    }
    const auto found = t.vertices_in_region(box);
    CHECK(found.size() == brute.size());
    for (const auto& info : found) {
      double white = 0.0, grey = 0.0;
      for (const auto& inc : info.tiles) {
        const CyclicPolygon tile = t.tile_at(inc.tile);
        CHECK(distance(tile.vertex(inc.corner), info.point) < 1e-12);
        (inc.tile.color == Color::White ? white : grey) += tile.angle(inc.corner);
      }
      CHECK(std::abs(white - kPi) <= 1e-9);
      CHECK(std::abs(grey - kPi) <= 1e-9);
    }
  }
}

TEST_CASE("tiles cover the plane without overlap") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (const CyclicPolygon& p : sample_tiles()) {
    const Tiling t(p);
    int exactly_one = 0;
    const int samples = 20000;
    for (int i = 0; i < samples; ++i) {
      const Point2 q{u(rng), u(rng)};
      const auto cand = t.tiles_in_region(BBox::around(q, 0.0));
      int inside = 0;
      for (const auto& a : cand) inside += t.tile_at(a).boundary_distance(q) > 0.0 ? 1 : 0;
      exactly_one += inside == 1 ? 1 : 0;
    }
    CHECK(exactly_one >= 0.999 * samples);

    const BBox window{{-3, -3}, {3, 3}};
    double area = 0.0;
    for (const auto& a : t.tiles_in_region(window)) {
      if (window.contains(t.tile_at(a).barycenter())) area += t.tile_at(a).area();
    }
    CHECK(std::abs(area - 36.0) / 36.0 < 0.15);
    CHECK(std::abs(2.0 * p.area() - std::abs(cross(t.v1(), t.v2()))) < 1e-12);
  }
}
