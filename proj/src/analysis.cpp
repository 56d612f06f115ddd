#include "tbill/analysis.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "tbill/parallel.hpp"

namespace tbill {

SimplexPoint simplex_point(const CyclicPolygon& triangle) {
  if (triangle.kind() != PolygonKind::Triangle) throw PreconditionViolation("simplex point needs a triangle");
  return {{triangle.angle(0) / kPi, triangle.angle(1) / kPi, triangle.angle(2) / kPi}};
}

std::optional<SimplexPoint> gasket_coordinates(const CyclicPolygon& triangle) {
  const SimplexPoint a = simplex_point(triangle);
  SimplexPoint out;
  for (std::size_t i = 0; i < 3; ++i) {
    if (a.x[i] >= 0.5) return std::nullopt;
    out.x[i] = 1.0 - 2.0 * a.x[i];
  }
  return out;
}

CyclicPolygon triangle_from_gasket(const SimplexPoint& p) {
  for (double x : p.x) {
    if (!(x > 0.0)) throw PreconditionViolation("gasket point must have positive coordinates");
  }
  const double a = kPi * (1.0 - p.x[0]) / 2.0, b = kPi * (1.0 - p.x[1]) / 2.0;
  return CyclicPolygon::triangle_from_angles(a, b, kPi - a - b);
}

std::optional<SimplexPoint> rauzy_step(const SimplexPoint& p) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (p.x[i] <= 0.5 + 1e-12) continue;
    const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    // Sums kept symmetric in j, k so the step commutes with coordinate permutations.
    const double rest = p.x[j] + p.x[k];
    const double xi = p.x[i] - rest;
    const double total = xi + rest;
    SimplexPoint out;
    out.x[i] = xi / total;
    out.x[j] = p.x[j] / total;
    out.x[k] = p.x[k] / total;
    return out;
  }
  return std::nullopt;
}

int gasket_depth(const SimplexPoint& p, int n) {
  SimplexPoint x = p;
  for (int d = 0; d < n; ++d) {
    const auto next = rauzy_step(x);
    if (!next) return d;
    x = *next;
  }
  return n;
}

int gasket_depth_exact(std::array<std::int64_t, 3> v, int n) {
  for (int d = 0; d < n; ++d) {
    bool stepped = false;
    for (std::size_t i = 0; i < 3 && !stepped; ++i) {
      const std::int64_t rest = v[(i + 1) % 3] + v[(i + 2) % 3];
      if (v[i] > rest) {
        v[i] -= rest;
        stepped = true;
      }
    }
    if (!stepped) return d;
  }
  return n;
}

GasketGrid gasket_grid(int size, int n, int threads) {
  if (size < 2) throw PreconditionViolation("grid size must be at least 2");
  GasketGrid g;
  g.size = size;
  g.cap = n;
  g.depth.assign(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), -1);
  const std::int64_t big = size - 1;
  parallel_for(static_cast<std::size_t>(size), [&](std::size_t row) {
    const auto y = static_cast<std::int64_t>(row);
    for (std::int64_t x = 0; x <= y; ++x) {
      g.depth[row * static_cast<std::size_t>(size) + static_cast<std::size_t>(x)] =
          gasket_depth_exact({x, big - y, y - x}, n);
    }
  }, threads);
  return g;
}

double gasket_survivor_fraction(int samples, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> e(1.0);
  int survivors = 0;
  for (int i = 0; i < samples; ++i) {
    const double a = e(rng), b = e(rng), c = e(rng);
    const double s = a + b + c;
    survivors += gasket_depth({{a / s, b / s, c / s}}, n) == n ? 1 : 0;
  }
  return samples > 0 ? static_cast<double>(survivors) / samples : 0.0;
}

int triangle_gasket_depth(const CyclicPolygon& triangle, int n) {
  const auto g = gasket_coordinates(triangle);
  return g ? gasket_depth(*g, n) : 0;
}

double triangle_survivor_fraction(int samples, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> e(1.0);
  int survivors = 0;
  for (int i = 0; i < samples; ++i) {
    const double a = e(rng), b = e(rng), c = e(rng);
    const double s = a + b + c;
    bool acute = true;
    SimplexPoint g;
    for (std::size_t k = 0; k < 3; ++k) {
      const double x = std::array<double, 3>{a, b, c}[k] / s;
      acute = acute && x < 0.5;
      g.x[k] = 1.0 - 2.0 * x;
    }
    survivors += acute && gasket_depth(g, n) == n ? 1 : 0;
  }
  return samples > 0 ? static_cast<double>(survivors) / samples : 0.0;
}

namespace {

struct Segment {
  Point2 a;
  Point2 b;
};

double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

bool segments_cross(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const double d1 = orient(q1, q2, p1), d2 = orient(q1, q2, p2);
  const double d3 = orient(p1, p2, q1), d4 = orient(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  const auto on = [](Point2 a, Point2 b, Point2 c, double d) {
    return d == 0.0 && std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
           c.y <= std::max(a.y, b.y);
  };
  return on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4);
}

// Uniform grid over the loop segments for intersection and winding queries.
class LoopIndex {
 public:
  explicit LoopIndex(const std::vector<Point2>& loop) {
    const std::size_t n = loop.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      segs_.push_back({loop[i], loop[(i + 1) % n]});
      total += distance(loop[i], loop[(i + 1) % n]);
    }
    cell_ = std::max(total / static_cast<double>(std::max<std::size_t>(n, 1)), 1e-9);
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      const auto [x0, y0, x1, y1] = cell_range(segs_[i].a, segs_[i].b);
      for (std::int64_t cx = x0; cx <= x1; ++cx) {
        for (std::int64_t cy = y0; cy <= y1; ++cy) cells_[key(cx, cy)].push_back(i);
      }
      for (std::int64_t cy = y0; cy <= y1; ++cy) rows_[cy].push_back(i);
    }
  }

  std::size_t size() const { return segs_.size(); }

  bool self_intersects() const {
    const std::size_t n = segs_.size();
    for (const auto& [k, ids] : cells_) {
      for (std::size_t u = 0; u < ids.size(); ++u) {
        for (std::size_t v = u + 1; v < ids.size(); ++v) {
          const std::size_t i = ids[u], j = ids[v];
          const bool adjacent = i == j || (i + 1) % n == j || (j + 1) % n == i;
          if (adjacent) continue;
          if (segments_cross(segs_[i].a, segs_[i].b, segs_[j].a, segs_[j].b)) return true;
        }
      }
    }
    return false;
  }

  bool crosses(Point2 p, Point2 q) const {
    std::set<std::size_t> seen;
    const auto [x0, y0, x1, y1] = cell_range(p, q);
    for (std::int64_t cx = x0; cx <= x1; ++cx) {
      for (std::int64_t cy = y0; cy <= y1; ++cy) {
        const auto it = cells_.find(key(cx, cy));
        if (it == cells_.end()) continue;
        for (std::size_t i : it->second) {
          if (seen.insert(i).second && segments_cross(p, q, segs_[i].a, segs_[i].b)) return true;
        }
      }
    }
    return false;
  }

  int winding(Point2 p) const {
    const auto it = rows_.find(static_cast<std::int64_t>(std::floor(p.y / cell_)));
    if (it == rows_.end()) return 0;
    int w = 0;
    for (std::size_t i : it->second) {
      const Point2 a = segs_[i].a, b = segs_[i].b;
      if (a.y <= p.y) {
        if (b.y > p.y && orient(a, b, p) > 0) ++w;
      } else if (b.y <= p.y && orient(a, b, p) < 0) {
        --w;
      }
    }
    return w;
  }

 private:
  static std::uint64_t key(std::int64_t x, std::int64_t y) {
    return (static_cast<std::uint64_t>(x) << 32) ^ (static_cast<std::uint64_t>(y) & 0xFFFFFFFFULL);
  }
  std::array<std::int64_t, 4> cell_range(Point2 a, Point2 b) const {
    return {static_cast<std::int64_t>(std::floor(std::min(a.x, b.x) / cell_)),
            static_cast<std::int64_t>(std::floor(std::min(a.y, b.y) / cell_)),
            static_cast<std::int64_t>(std::floor(std::max(a.x, b.x) / cell_)),
            static_cast<std::int64_t>(std::floor(std::max(a.y, b.y) / cell_))};
  }

  std::vector<Segment> segs_;
  double cell_ = 1.0;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> rows_;
};

std::pair<VertexKey, VertexKey> edge_key(const Tiling& t, const TileAddress& a, int k) {
  const auto ev = t.canonical(a.color).edge_vertices(k);
  VertexKey u = t.vertex_key(a, ev[0]);
  VertexKey v = t.vertex_key(a, ev[1]);
  if (v < u) std::swap(u, v);
  return {u, v};
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

}  // namespace

std::vector<Point2> closed_loop(const TrajectoryRecord& rec) {
  if (rec.status != Status::Periodic || rec.period <= 0) throw PreconditionViolation("record is not periodic");
  if (static_cast<std::int64_t>(rec.crossings.size()) < rec.period) {
    throw PreconditionViolation("record does not keep a full period of crossings");
  }
  std::vector<Point2> loop;
  for (std::int64_t i = 0; i < rec.period; ++i) loop.push_back(rec.crossings[static_cast<std::size_t>(i)].point);
  return loop;
}

EnclosedGraph enclosed_region(const Tiling& t, const std::vector<Point2>& loop) {
  if (loop.size() < 3) throw PreconditionViolation("a closed polyline needs three points");
  const LoopIndex index(loop);
  if (index.self_intersects()) throw SelfIntersecting("closed polyline intersects itself");
  const BBox box = bounding_box(loop);

  EnclosedGraph g;
  std::set<VertexKey> inside;
  for (const auto& v : t.vertices_in_region(box)) {
    if (index.winding(v.point) != 0) {
      inside.insert(v.key);
      g.vertices.push_back(v.key);
    }
  }
  std::set<std::pair<VertexKey, VertexKey>> edges;
  for (const TileAddress& a : t.tiles_in_region(box)) {
    const CyclicPolygon tile = t.tile_at(a);
    bool all_inside = true;
    for (int k = 0; k < tile.size(); ++k) {
      const auto e = edge_key(t, a, k);
      const bool in = inside.count(e.first) && inside.count(e.second) && !index.crosses(tile.edge(k).p, tile.edge(k).q);
      if (in) edges.insert(e);
      all_inside = all_inside && in;
    }
    if (all_inside) g.tiles.push_back(a);
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

EnclosedGraph enclosed_region(const Tiling& t, const TrajectoryRecord& rec) { return enclosed_region(t, closed_loop(rec)); }

TreeReport tree_check(const EnclosedGraph& g) {
  TreeReport r;
  r.vertices = static_cast<int>(g.vertices.size());
  r.edges = static_cast<int>(g.edges.size());
  r.enclosed_tiles = static_cast<int>(g.tiles.size());
  std::map<VertexKey, int> id;
  for (const VertexKey& v : g.vertices) id.emplace(v, static_cast<int>(id.size()));
  UnionFind uf(r.vertices);
  r.components = r.vertices;
  bool cycle = false;
  for (const auto& [u, v] : g.edges) {
    if (uf.unite(id.at(u), id.at(v))) --r.components;
    else cycle = true;
  }
  r.is_tree = r.vertices > 0 && r.components == 1 && !cycle;
  return r;
}

TreeReport tree_check(const Tiling& t, const TrajectoryRecord& rec) { return tree_check(enclosed_region(t, rec)); }

FlowerReport flower_check(const Folding& f, const VertexKey& v, double theta0, std::int64_t max_steps) {
  const Tiling& t = f.tiling();
  const double r = t.radius();
  FlowerReport rep;
  rep.vertex = v;
  rep.point = t.vertex_point(v);
  rep.theta = theta0;
  rep.tau = singular_tau(f, v, theta0);

  // Tile pair of a petal, in either traversal order.
  const auto tag = [](const TileAddress& a, const TileAddress& b) {
    const auto ka = std::make_pair(std::make_pair(a.m, a.n), static_cast<int>(a.color));
    const auto kb = std::make_pair(std::make_pair(b.m, b.n), static_cast<int>(b.color));
    return std::min(ka, kb) == ka ? std::make_pair(ka, kb) : std::make_pair(kb, ka);
  };
  for (const auto& inc : t.incident_tiles(v)) {
    const CyclicPolygon tile = t.tile_at(inc.tile);
    const Vec2 e1 = normalized(tile.vertex(inc.corner + 1) - rep.point);
    const Vec2 e2 = normalized(tile.vertex(inc.corner - 1) - rep.point);
    const Vec2 base = f.direction(f.angle_in_tile(theta0, inc.tile));
    for (double sign : {1.0, -1.0}) {
      const Vec2 d = sign * base;
      const double c = cross(e1, e2);
      const double s1 = c > 0 ? cross(e1, d) : cross(e2, d);
      const double s2 = c > 0 ? cross(d, e2) : cross(d, e1);
      if (!(s1 > 1e-9 && s2 > 1e-9)) continue;
      ++rep.branches;
      TraceOptions opts;
      opts.max_steps = max_steps;
      opts.escape_check_from = 0;
      const TrajectoryRecord rec = trace(f, inc.tile, rep.point + 1e-7 * r * d, d, opts);
      std::vector<std::pair<std::vector<Point2>, TileAddress>> closed;
      bool via = false;
      if (rec.status == Status::SingularHit && rec.singular_vertex && distance(*rec.singular_vertex, rep.point) <= 1e-6 * r) {
        std::vector<Point2> path;
        for (const Crossing& cr : rec.crossings) path.push_back(cr.point);
        path.pop_back();
        closed.emplace_back(std::move(path), rec.crossings.back().tile);
      } else if (rec.status == Status::SingularHit) {
        // Saddle connection to another vertex: follow the parallel leaves on either side.
        via = true;
        for (double side : {1.0, -1.0}) {
          const Point2 p = rep.point + 1e-7 * r * d + side * 1e-10 * r * perp(d);
          TraceOptions so = opts;
          so.max_steps = std::min<std::int64_t>(max_steps, 20000);
          const TrajectoryRecord sh = trace(f, inc.tile, p, d, so);
          Point2 prev = p;
          for (std::size_t i = 0; i < sh.crossings.size(); ++i) {
            const Point2 cur = sh.crossings[i].point;
            if (i >= 2 && point_segment_distance(rep.point, prev, cur) <= 1e-6 * r) {
              std::vector<Point2> path;
              for (std::size_t j = 0; j < i; ++j) path.push_back(sh.crossings[j].point);
              closed.emplace_back(std::move(path), sh.crossings[i].tile);
              break;
            }
            prev = cur;
          }
        }
      }
      if (closed.empty()) {
        ++rep.open_branches;
        continue;
      }
      for (const auto& [path, last] : closed) {
        const auto key = tag(inc.tile, last);
        bool duplicate = false;
        for (const Petal& q : rep.petals) duplicate = duplicate || tag(q.first_tile, q.last_tile) == key;
        if (duplicate) continue;

        Petal petal;
        petal.first_tile = inc.tile;
        petal.last_tile = last;
        petal.crossings = static_cast<std::int64_t>(path.size()) + 1;
        petal.through_other_vertices = via;
        for (const auto& nb : t.neighbors(inc.tile)) {
          if (!(nb.address == last)) continue;
          const bool at_vertex = distance(nb.edge.p, rep.point) <= 1e-9 * r || distance(nb.edge.q, rep.point) <= 1e-9 * r;
          if (!at_vertex) continue;
          petal.adjacent_tiles = true;
          std::vector<Point2> loop{rep.point};
          loop.insert(loop.end(), path.begin(), path.end());
          if (loop.size() >= 3) {
            const LoopIndex idx(loop);
            petal.shared_edge_inside = idx.winding(nb.edge.midpoint()) != 0;
          }
        }
        rep.petals.push_back(petal);
      }
    }
  }
  if (rep.petals.empty()) throw NoSingularLeaf("no branch of the singular leaf closes up at the vertex");
  rep.other_petal = rep.petals.size() >= 2;
  rep.conjecture_holds = std::all_of(rep.petals.begin(), rep.petals.end(),
                                     [](const Petal& p) { return p.adjacent_tiles && p.shared_edge_inside; });
  return rep;
}

EscapeProfile escape_profile(const TrajectoryRecord& rec) {
  if (rec.status == Status::Periodic) throw PreconditionViolation("escape profile of a periodic record");
  const EscapeFit fit = fit_escape(rec);
  EscapeProfile p;
  p.windows = rec.displacement;
  p.exponent = fit.exponent;
  p.direction = fit.direction;
  p.residual = fit.residual;
  p.speed = fit.speed;
  return p;
}

CyclicPolygon random_triangle(std::uint64_t seed, double min_angle) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> e(1.0);
  for (;;) {
    const double a = e(rng), b = e(rng), c = e(rng);
    const double s = (a + b + c) / kPi;
    const double x = a / s, y = b / s, z = kPi - x - y;
    if (x >= min_angle && y >= min_angle && z >= min_angle) return CyclicPolygon::triangle_from_angles(x, y, z);
  }
}

CyclicPolygon random_quad(std::uint64_t seed, double min_arc) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (;;) {
    std::array<double, 4> pos{u(rng), u(rng), u(rng), u(rng)};
    std::sort(pos.begin(), pos.end(), std::greater<>());
    bool ok = true;
    for (std::size_t i = 0; i < 4; ++i) ok = ok && wrap_angle(pos[i] - pos[(i + 1) % 4]) >= min_arc;
    if (ok) return CyclicPolygon::quad_from_circle_positions(pos);
  }
}

namespace {

std::uint64_t cell_seed(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

int status_index(Status s) { return static_cast<int>(s); }

}  // namespace

SweepResult parameter_sweep(const SweepConfig& config) {
  if (config.shapes < 0 || config.starts < 0 || config.max_steps <= 0) {
    throw PreconditionViolation("sweep sizes must be nonnegative and the step budget positive");
  }
  if (!config.zero_tau && !(0.0 <= config.tau_min && config.tau_min < config.tau_max && config.tau_max < 1.0)) {
    throw PreconditionViolation("need 0 <= tau_min < tau_max < 1");
  }
  std::vector<std::optional<SweepCell>> cells(static_cast<std::size_t>(config.shapes));
  parallel_for(cells.size(), [&](std::size_t ci) {
    const int index = static_cast<int>(ci);
    std::mt19937_64 rng(cell_seed(config.seed, index));
    const bool quad = config.family == ShapeFamily::Quad || (config.family == ShapeFamily::Mixed && index % 2 == 1);
    CyclicPolygon shape = quad ? random_quad(rng(), config.min_angle) : random_triangle(rng(), config.min_angle);
    while (config.zero_tau && shape.boundary_distance(shape.circumcenter()) <= 1e-3) {
      shape = quad ? random_quad(rng(), config.min_angle) : random_triangle(rng(), config.min_angle);
    }
    SweepCell cell{index, shape, {}, {}};
    const Tiling t(shape);
    const Folding f(t);
    std::gamma_distribution<double> g(1.0, 1.0);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    TraceOptions opts;
    opts.max_steps = config.max_steps;
    opts.keep_crossings = false;
    for (int s = 0; s < config.starts; ++s) {
      SweepRun run;
      for (int attempt = 0; attempt <= 20; ++attempt) {
        Point2 p = shape.circumcenter();
        Vec2 d = unit(ang(rng));
        if (!config.zero_tau) {
          for (;;) {
            Point2 x{};
            double w_total = 0.0;
            for (int i = 0; i < shape.size(); ++i) {
              const double w = g(rng);
              x = x + w * shape.vertex(i);
              w_total += w;
            }
            p = x / w_total;
            d = unit(ang(rng));
            const double tau = std::abs(cross(d, shape.circumcenter() - p)) / shape.circumradius();
            if (tau >= config.tau_min && tau <= config.tau_max && shape.boundary_distance(p) > 1e-6) break;
          }
        }
        const TrajectoryRecord rec = trace(f, {0, 0, Color::White}, p, d, opts);
        run.start = p;
        run.direction = d;
        run.tau = rec.tau;
        run.theta = rec.theta;
        run.status = rec.status;
        run.exact_recurrence = rec.exact_recurrence;
        run.period = rec.period;
        run.steps = rec.steps;
        run.drift = rec.drift;
        run.exponent = growth_exponent(rec);
        run.max_displacement = rec.max_displacement;
        run.tau_dispersion = rec.tau_dispersion();
        if (rec.status != Status::SingularHit) break;
        ++run.redrawn;
      }
      ++cell.counts[static_cast<std::size_t>(status_index(run.status))];
      cell.runs.push_back(run);
    }
    cells[ci] = std::move(cell);
  }, config.threads);

  SweepResult out;
  out.config = config;
  for (auto& c : cells) {
    for (std::size_t k = 0; k < out.totals.size(); ++k) out.totals[k] += c->counts[k];
    out.cells.push_back(std::move(*c));
  }
  return out;
}

}  // namespace tbill
