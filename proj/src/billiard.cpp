#include "tbill/billiard.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace tbill {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Periodic: return "Periodic";
    case Status::LinearEscape: return "LinearEscape";
    case Status::NonLinearCandidate: return "NonLinearCandidate";
    case Status::Unresolved: return "Unresolved";
    case Status::SingularHit: return "SingularHit";
  }
  return "Unresolved";
}

Vec2 refract(Vec2 d, const Edge& e) {
  const Vec2 t = normalized(e.vector());
  if (std::abs(cross(t, d)) <= kEps) throw TangentCrossing("direction is tangent to the crossed edge");
  return normalized(d - 2.0 * dot(d, t) * t);
}

namespace {

struct TileGeometry {
  std::vector<Point2> p;
  std::vector<Vec2> dir;
  std::vector<Vec2> n_out;
  std::vector<double> len;
  Point2 center;
};

TileGeometry geometry_of(const CyclicPolygon& tile) {
  TileGeometry g;
  g.center = tile.circumcenter();
  for (int k = 0; k < tile.size(); ++k) {
    const Edge e = tile.edge(k);
    g.p.push_back(e.p);
    g.dir.push_back(e.vector());
    g.len.push_back(e.length());
    g.n_out.push_back(normalized(perp(e.vector())));
  }
  return g;
}

bool next_checkpoint(std::int64_t step, std::int64_t& checkpoint) {
  if (step < checkpoint) return false;
  checkpoint = std::max(checkpoint + 1, static_cast<std::int64_t>(std::ceil(static_cast<double>(checkpoint) * 1.05)));
  return true;
}

}  // namespace

TrajectoryRecord trace(const Folding& f, Point2 p0, Vec2 d0, const TraceOptions& opts) {
  return trace(f, f.tiling().locate(p0), p0, d0, opts);
}

TrajectoryRecord trace(const Folding& f, const TileAddress& start, Point2 p0, Vec2 d0, const TraceOptions& opts) {
  const Tiling& t = f.tiling();
  const double r = t.radius();
  const double tol = kEps * r;
  const std::array<TileGeometry, 2> geo{geometry_of(t.canonical(Color::White)), geometry_of(t.canonical(Color::Grey))};
  const int sides = t.sides();

  TrajectoryRecord rec;
  rec.start_tile = start;
  rec.start = p0;
  rec.start_direction = normalized(d0);
  rec.theta = f.theta_from_tile_angle(f.relative_angle(rec.start_direction), start);
  rec.clearance = std::numeric_limits<double>::infinity();

  TileAddress addr = start;
  Point2 q = p0 - t.translation(addr);
  Vec2 d = rec.start_direction;
  {
    const TileGeometry& g = geo[static_cast<std::size_t>(addr.color)];
    rec.tau = cross(d, g.center - q) / r;
    rec.tau_min = rec.tau_max = rec.tau;
  }

  std::unordered_set<TileAddress, TileAddressHash> visited;
  visited.insert(addr);
  bool closed = false;
  Crossing first;
  std::int64_t checkpoint = 1;

  for (std::int64_t step = 0; step < opts.max_steps; ++step) {
    const TileGeometry& g = geo[static_cast<std::size_t>(addr.color)];
    const double tau_here = cross(d, g.center - q) / r;
    rec.tau_min = std::min(rec.tau_min, tau_here);
    rec.tau_max = std::max(rec.tau_max, tau_here);

    int exit = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < sides; ++k) {
      const double dn = dot(d, g.n_out[static_cast<std::size_t>(k)]);
      if (dn <= 0.0) continue;
      const double lambda = dot(g.p[static_cast<std::size_t>(k)] - q, g.n_out[static_cast<std::size_t>(k)]) / dn;
      if (lambda < best) {
        best = lambda;
        exit = k;
      }
    }
    const auto ke = static_cast<std::size_t>(exit);
    const Point2 x = q + std::max(best, 0.0) * d;
    const double s = std::clamp(dot(x - g.p[ke], g.dir[ke]) / (g.len[ke] * g.len[ke]), 0.0, 1.0);
    const Vec2 shift = t.translation(addr);

    for (std::size_t k = 0; k < g.p.size(); ++k) {
      rec.clearance = std::min(rec.clearance, point_segment_distance(g.p[k], q, x));
    }

    const Crossing c{addr, exit, x + shift, d, s};
    rec.steps = step + 1;
    const double disp = distance(c.point, p0);
    rec.max_displacement = std::max(rec.max_displacement, disp);
    if (next_checkpoint(rec.steps, checkpoint)) {
      rec.displacement.push_back({rec.steps, rec.max_displacement, c.point});
      if (!closed && opts.escape_check_from > 0 && rec.steps >= opts.escape_check_from &&
          escapes_linearly(fit_escape(rec), rec.max_displacement, r)) {
        if (opts.keep_crossings) rec.crossings.push_back(c);
        break;
      }
    }

    if (s * g.len[ke] <= tol || (1.0 - s) * g.len[ke] <= tol) {
      rec.status = Status::SingularHit;
      rec.singular_vertex = (s < 0.5 ? g.p[ke] : g.p[ke] + g.dir[ke]) + shift;
      if (opts.keep_crossings) rec.crossings.push_back(c);
      break;
    }

    if (step == 0) {
      first = c;
    } else if (!closed && c.tile.color == first.tile.color && c.edge == first.edge &&
               std::abs(c.s - first.s) * g.len[ke] <= opts.recurrence_tol * r &&
               norm(c.direction - first.direction) <= opts.recurrence_tol) {
      closed = true;
      rec.exact_recurrence = true;
      rec.period = step;
      rec.shift = {c.tile.m - first.tile.m, c.tile.n - first.tile.n};
      if (rec.shift == LatticeOffset{}) {
        rec.status = Status::Periodic;
        rec.drift = {};
      } else {
        rec.status = Status::LinearEscape;
        rec.drift = t.translation(rec.shift.m, rec.shift.n) / static_cast<double>(rec.period);
      }
      if (opts.stop_on_recurrence) {
        if (opts.keep_crossings) rec.crossings.push_back(c);
        break;
      }
    }
    if (!closed && step > 0 && !visited.insert(addr).second) ++rec.repeated_tiles;
    if (opts.keep_crossings) rec.crossings.push_back(c);

    // Refract and continue in the neighbour, which has the same side reversed.
    const Vec2 t_hat = g.dir[ke] / g.len[ke];
    d = normalized(d - 2.0 * dot(d, t_hat) * t_hat);
    addr = t.neighbor(addr, exit);
    const TileGeometry& ng = geo[static_cast<std::size_t>(addr.color)];
    q = ng.p[ke] + (1.0 - s) * ng.dir[ke];
  }
  if (rec.displacement.empty() || rec.displacement.back().step != rec.steps) {
    const Point2 last = rec.crossings.empty() ? p0 : rec.crossings.back().point;
    rec.displacement.push_back({rec.steps, rec.max_displacement, last});
  }
  rec.status = classify(rec, r);
  if (rec.status == Status::LinearEscape && !rec.exact_recurrence) {
    const EscapeFit fit = fit_escape(rec);
    rec.drift = fit.speed * fit.direction;
  }
  return rec;
}

EnergyReport energy(const TrajectoryRecord& rec) { return {rec.tau, rec.tau_dispersion()}; }

double growth_exponent(const TrajectoryRecord& rec) {
  const double lo = static_cast<double>(rec.steps) / 10.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& s : rec.displacement) {
    if (static_cast<double>(s.step) < lo || s.max_displacement <= 0.0) continue;
    const double x = std::log(static_cast<double>(s.step));
    const double y = std::log(s.max_displacement);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 3) return std::numeric_limits<double>::quiet_NaN();
  const double den = n * sxx - sx * sx;
  if (den <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / den;
}

EscapeFit fit_escape(const TrajectoryRecord& rec) {
  EscapeFit fit;
  fit.exponent = growth_exponent(rec);
  if (rec.displacement.empty()) return fit;
  const Vec2 span = rec.displacement.back().position - rec.start;
  const double len = norm(span);
  if (len <= 0.0) return fit;
  fit.direction = span / len;
  fit.speed = len / static_cast<double>(std::max<std::int64_t>(rec.displacement.back().step, 1));
  const double lo = static_cast<double>(rec.steps) / 10.0;
  double worst = 0.0;
  for (const auto& s : rec.displacement) {
    if (static_cast<double>(s.step) < lo) continue;
    worst = std::max(worst, std::abs(cross(fit.direction, s.position - rec.start)));
  }
  fit.residual = rec.max_displacement > 0.0 ? worst / rec.max_displacement : 0.0;
  return fit;
}

bool escapes_linearly(const EscapeFit& fit, double max_displacement, double radius) {
  return fit.exponent >= 0.95 && fit.exponent <= 1.05 && fit.residual < 0.05 && max_displacement >= 100.0 * radius;
}

Status classify(const TrajectoryRecord& rec, double radius) {
  if (rec.status == Status::SingularHit || rec.exact_recurrence) return rec.status;
  const EscapeFit fit = fit_escape(rec);
  if (rec.steps >= 1000 && escapes_linearly(fit, rec.max_displacement, radius)) return Status::LinearEscape;
  if (std::abs(rec.tau) < 1e-6 && rec.steps >= 1000 && fit.exponent < 0.9) return Status::NonLinearCandidate;
  return Status::Unresolved;
}

std::vector<TileAddress> tile_sequence(const TrajectoryRecord& rec) {
  std::vector<TileAddress> out;
  const auto n = static_cast<std::size_t>(rec.period > 0 ? rec.period : static_cast<std::int64_t>(rec.crossings.size()));
  for (std::size_t i = 0; i < n && i < rec.crossings.size(); ++i) out.push_back(rec.crossings[i].tile);
  return out;
}

bool perturb_and_compare(const Folding& f, const TrajectoryRecord& rec, double delta) {
  if (rec.status != Status::Periodic) throw PreconditionViolation("record is not periodic");
  if (!(delta < rec.clearance / 2.0)) throw PreconditionViolation("perturbation exceeds half the clearance");
  const Point2 p = rec.start + delta * perp(rec.start_direction);
  TraceOptions opts;
  opts.max_steps = 4 * rec.period + 16;
  const TrajectoryRecord other = trace(f, rec.start_tile, p, rec.start_direction, opts);
  if (other.status != Status::Periodic || other.period != rec.period) return false;
  const auto a = tile_sequence(rec);
  const auto b = tile_sequence(other);
  if (a.size() != b.size()) return false;
  for (std::size_t rot = 0; rot < a.size(); ++rot) {
    bool same = true;
    for (std::size_t i = 0; i < a.size() && same; ++i) same = a[i] == b[(i + rot) % b.size()];
    if (same) return true;
  }
  return false;
}

namespace {

// Clips the line p + λu to the convex polygon; returns false when it misses.
bool clip_line(const CyclicPolygon& tile, Point2 p, Vec2 u, Point2& a, Point2& b) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int k = 0; k < tile.size(); ++k) {
    const Edge e = tile.edge(k);
    const Vec2 n = normalized(perp(e.vector()));
    const double num = dot(e.p - p, n);
    const double den = dot(u, n);
    if (std::abs(den) < 1e-15) {
      if (num < 0.0) return false;
      continue;
    }
    const double lambda = num / den;
    if (den > 0.0) hi = std::min(hi, lambda);
    else lo = std::max(lo, lambda);
  }
  if (!(hi - lo > 1e-12)) return false;
  a = p + lo * u;
  b = p + hi * u;
  return true;
}

}  // namespace

std::vector<LeafSegment> leaf_segments(const Folding& f, double tau, double theta0, const BBox& region) {
  const Tiling& t = f.tiling();
  const auto [c0, c1] = f.chord_points({tau, theta0});
  const Vec2 u = normalized(c1 - c0);
  std::vector<LeafSegment> out;
  for (const TileAddress& a : t.tiles_in_region(region)) {
    const Isometry inv = f.isometry(a).inverse();
    Point2 p, q;
    if (clip_line(t.tile_at(a), inv.apply(c0), inv.linear(u), p, q)) out.push_back({a, p, q});
  }
  return out;
}

double singular_tau(const Folding& f, const VertexKey& v, double theta0) {
  const Tiling& t = f.tiling();
  const auto inc = t.incident_tiles(v);
  const Point2 img = f.fold(t.vertex_point(v), inc.front().tile);
  return std::sin(theta0 - f.relative_angle(img - t.center()));
}

ProngCount singular_prongs(const Folding& f, const VertexKey& v, double theta0) {
  const Tiling& t = f.tiling();
  const Point2 img = f.fold(t.vertex_point(v), t.incident_tiles(v).front().tile);
  const Vec2 u = f.direction(theta0);
  return count_prongs(f, v, dot(u, img - t.center()) > 0.0 ? -u : u);
}

Foliation parallel_foliation(const Folding& f, double theta0, const BBox& region, int n_leaves) {
  Foliation out;
  out.theta = theta0;
  for (const auto& v : f.tiling().vertices_in_region(region)) {
    const ProngCount pc = singular_prongs(f, v.key, theta0);
    if (pc.prongs > 0 || pc.degenerate) out.singular_taus.push_back(singular_tau(f, v.key, theta0));
  }
  std::sort(out.singular_taus.begin(), out.singular_taus.end());
  for (int j = 0; j < n_leaves; ++j) {
    const double tau = -1.0 + (2.0 * j + 1.0) / n_leaves;
    bool near_singular = false;
    for (double s : out.singular_taus) near_singular = near_singular || std::abs(s - tau) < 1e-9;
    if (near_singular || std::abs(tau) >= 1.0 - kEps) continue;
    out.leaves.push_back({tau, false, leaf_segments(f, tau, theta0, region)});
  }
  for (double s : out.singular_taus) {
    if (std::abs(s) >= 1.0 - kEps) continue;
    out.leaves.push_back({s, true, leaf_segments(f, s, theta0, region)});
  }
  std::stable_sort(out.leaves.begin(), out.leaves.end(),
                   [](const FoliationLeaf& a, const FoliationLeaf& b) { return a.tau < b.tau; });
  return out;
}

}  // namespace tbill
