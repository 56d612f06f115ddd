#include <doctest.h>

#include <random>

#include "tbill/folding.hpp"

using namespace tbill;

namespace {

std::vector<CyclicPolygon> sample_tiles() {
  return {CyclicPolygon::triangle_from_angles(kPi / 3, kPi / 3, kPi / 3),
          CyclicPolygon::triangle_from_angles(1.2, 1.0, kPi - 2.2),
          CyclicPolygon::triangle_from_angles(0.4, 0.5, kPi - 0.9),
          CyclicPolygon::quad_from_circle_positions({2.4, 1.1, -0.3, -2.0}),
          CyclicPolygon::quad_from_circle_positions({1.0, 0.2, -1.5, -3.5})};
}

// Random walk of edge crossings from P0; returns the edge list.
std::vector<int> random_path(std::mt19937_64& rng, int sides, int len) {
  std::uniform_int_distribution<int> pick(0, sides - 1);
  std::vector<int> out;
  for (int i = 0; i < len; ++i) out.push_back(pick(rng));
  return out;
}

}  // namespace

TEST_CASE("phi on the lattice basis") {
  const auto tri = CyclicPolygon::triangle_from_angles(1.2, 1.0, kPi - 2.2);
  const Tiling t(tri);
  const Folding f(t);
  CHECK(circular_distance(f.phi1(), 2.0 * tri.angle(2)) < 1e-12);
  CHECK(circular_distance(f.phi2(), 2.0 * tri.angle(0)) < 1e-12);

  const auto quad = CyclicPolygon::quad_from_circle_positions({2.4, 1.1, -0.3, -2.0});
  const Tiling tq(quad);
  const Folding fq(tq);
  // Composed mirrors give the opposite rotation sense for quadrilaterals: -2δ = 2β, -2α = 2γ.
  CHECK(circular_distance(fq.phi1(), -2.0 * quad.angle(3)) < 1e-12);
  CHECK(circular_distance(fq.phi2(), -2.0 * quad.angle(0)) < 1e-12);

  for (std::int64_t m = -3; m <= 3; ++m) {
    for (std::int64_t n = -3; n <= 3; ++n) {
      CHECK(circular_distance(f.phi(m + 1, n - 2), wrap_angle(f.phi(m, n) + f.phi(1, -2))) < 1e-12);
    }
  }
}

TEST_CASE("closed-form fold agrees with folds composed along paths") {
  std::mt19937_64 rng(17);
  for (const CyclicPolygon& p : sample_tiles()) {
    const Tiling t(p);
    const Folding f(t);
    CHECK(f.isometry({0, 0, Color::White}).max_difference(Isometry::identity()) < 1e-15);
    const Edge shared = p.edge(t.reflection_edge());
    CHECK(f.isometry({0, 0, Color::Grey}).max_difference(Isometry::reflection_in_line(shared.p, shared.q)) < 1e-12);
    for (int i = 0; i < 300; ++i) {
      const auto [addr, iso] = fold_along_path(t, random_path(rng, p.size(), 1 + i % 25));
      CHECK(iso.max_difference(f.isometry(addr)) < 1e-9);
    }
  }
}

TEST_CASE("two different paths to the same tile give the same fold") {
  const Tiling t(CyclicPolygon::triangle_from_angles(1.2, 1.0, kPi - 2.2));
  std::mt19937_64 rng(23);
  const TileAddress target{2, 1, Color::Grey};
  std::vector<Isometry> found;
  for (int i = 0; i < 200000 && found.size() < 4; ++i) {
    const auto [addr, iso] = fold_along_path(t, random_path(rng, 3, 7 + 2 * (i % 5)));
    if (addr == target) found.push_back(iso);
  }
  REQUIRE(found.size() >= 2);
  for (const Isometry& iso : found) CHECK(iso.max_difference(found[0]) < 1e-9);
}

TEST_CASE("folded tiles are inscribed in the circumcircle and agree on shared edges") {
  for (const CyclicPolygon& p : sample_tiles()) {
    const Tiling t(p);
    const Folding f(t);
    for (std::int64_t m = -5; m <= 5; ++m) {
      for (std::int64_t n = -5; n <= 5; ++n) {
        for (Color c : {Color::White, Color::Grey}) {
          const TileAddress a{m, n, c};
          const CyclicPolygon tile = t.tile_at(a);
          for (const Point2& v : tile.vertices()) {
            CHECK(std::abs(distance(f.fold(v, a), t.center()) - t.radius()) < 1e-9);
          }
          for (const auto& [b, e] : t.neighbors(a)) {
            CHECK(distance(f.fold(e.p, a), f.fold(e.p, b)) < 1e-9);
            CHECK(distance(f.fold(e.q, a), f.fold(e.q, b)) < 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("angle_in_tile") {
  const Tiling t(CyclicPolygon::triangle_from_angles(kPi / 3, kPi / 3, kPi / 3));
  const Folding f(t);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int i = 0; i < 100; ++i) {
    const double th = u(rng);
    CHECK(circular_distance(f.angle_in_tile(th, {0, 0, Color::White}), th) < 1e-15);
    // The direction inside P0 + v1 is rotated back by the fold rotation 2γ = 2π/3.
    CHECK(circular_distance(f.angle_in_tile(th, {1, 0, Color::White}), th - kTwoPi / 3) < 1e-12);
    CHECK(circular_distance(f.theta_from_tile_angle(f.angle_in_tile(th, {3, -2, Color::Grey}), {3, -2, Color::Grey}), th) <
          1e-12);
  }

  std::uniform_int_distribution<int> ui(-20, 20);
  for (const CyclicPolygon& p : sample_tiles()) {
    const Tiling tt(p);
    const Folding ff(tt);
    for (int i = 0; i < 100; ++i) {
      const TileAddress a{ui(rng), ui(rng), Color::White};
      const TileAddress b{ui(rng), ui(rng), Color::White};
      const TileAddress g{ui(rng), ui(rng), Color::Grey};
      const double t1 = u(rng), t2 = u(rng);
      const double d1 = ff.angle_in_tile(t1, a) - ff.angle_in_tile(t1, b);
      const double d2 = ff.angle_in_tile(t2, a) - ff.angle_in_tile(t2, b);
      CHECK(circular_distance(d1, d2) < 1e-12);
      const double s1 = ff.angle_in_tile(t1, a) + ff.angle_in_tile(t1, g);
      const double s2 = ff.angle_in_tile(t2, a) + ff.angle_in_tile(t2, g);
      CHECK(circular_distance(s1, s2) < 1e-12);
    }
  }
}

TEST_CASE("chord_of") {
  auto [p, q] = chord_of({0.0, 0.0});
  CHECK(distance(p, {-1, 0}) < 1e-15);
  CHECK(distance(q, {1, 0}) < 1e-15);
  auto [r, s] = chord_of({0.5, kPi / 2});
  CHECK(std::abs(r.x - 0.5) < 1e-15);
  CHECK(std::abs(s.x - 0.5) < 1e-15);
  CHECK(s.y > r.y);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-0.999, 0.999);
  for (int i = 0; i < 10000; ++i) {
    const Chord c{u(rng), std::abs(u(rng)) * kTwoPi};
    auto [a, b] = chord_of(c);
    CHECK(std::abs(norm(a) - 1.0) < 1e-12);
    CHECK(std::abs(norm(b) - 1.0) < 1e-12);
    CHECK(std::abs(cross(normalized(b - a), -a) - c.tau) < 1e-12);
  }
  CHECK_THROWS_AS(chord_of({1.0, 0.0}), TangentChord);
}
