#include "tbill/iet.hpp"

#include <algorithm>
#include <numeric>

namespace tbill {

IETWithFlips::IETWithFlips(std::vector<IETInterval> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw PreconditionViolation("an interval exchange needs at least one interval");
  for (IETInterval& iv : intervals_) {
    if (!(iv.length > 0.0)) throw PreconditionViolation("interval lengths must be positive");
    iv.start = wrap_angle(iv.start);
    iv.image_start = wrap_angle(iv.image_start);
  }
  std::sort(intervals_.begin(), intervals_.end(), [](const auto& a, const auto& b) { return a.start < b.start; });
  if (domain_defect() > 1e-9) throw PreconditionViolation("intervals do not partition the circle");
}

std::vector<double> IETWithFlips::breakpoints() const {
  std::vector<double> out;
  for (const auto& iv : intervals_) out.push_back(iv.start);
  return out;
}

int IETWithFlips::locate(double x, double tol) const {
  x = wrap_angle(x);
  for (const auto& iv : intervals_) {
    if (circular_distance(x, iv.start) <= tol) throw HitBreakpoint("point lies on a breakpoint");
  }
  int best = 0;
  double best_off = kTwoPi;
  for (int i = 0; i < size(); ++i) {
    const double off = wrap_angle(x - intervals_[static_cast<std::size_t>(i)].start);
    if (off < best_off) {
      best_off = off;
      best = i;
    }
  }
  return best;
}

double IETWithFlips::apply(double x, double tol) const {
  const IETInterval& iv = intervals_[static_cast<std::size_t>(locate(x, tol))];
  const double off = wrap_angle(x - iv.start);
  return wrap_angle(iv.flipped ? iv.image_start + iv.length - off : iv.image_start + off);
}

std::vector<int> IETWithFlips::permutation() const {
  std::vector<int> order(intervals_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return intervals_[static_cast<std::size_t>(a)].image_start < intervals_[static_cast<std::size_t>(b)].image_start;
  });
  std::vector<int> pos(intervals_.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  return pos;
}

namespace {

double partition_defect(std::vector<std::pair<double, double>> spans) {
  std::sort(spans.begin(), spans.end());
  double defect = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const auto& [s, l] = spans[i];
    const auto& next = spans[(i + 1) % spans.size()];
    defect += circular_distance(s + l, next.first);
    total += l;
  }
  return defect + std::abs(total - kTwoPi);
}

}  // namespace

double IETWithFlips::image_defect() const {
  std::vector<std::pair<double, double>> spans;
  for (const auto& iv : intervals_) spans.push_back({iv.image_start, iv.length});
  return partition_defect(spans);
}

double IETWithFlips::domain_defect() const {
  std::vector<std::pair<double, double>> spans;
  for (const auto& iv : intervals_) spans.push_back({iv.start, iv.length});
  return partition_defect(spans);
}

IETWithFlips IETWithFlips::compose(const IETWithFlips& inner, double snap) const {
  int label_base = 1;
  for (const auto& iv : intervals_) label_base = std::max(label_base, iv.label + 1);
  std::vector<IETInterval> out;
  for (const IETInterval& in : inner.intervals()) {
    std::vector<double> cuts{0.0, in.length};
    for (const IETInterval& o : intervals_) {
      const double off = wrap_angle(o.start - in.image_start);
      if (off > snap && off < in.length - snap) cuts.push_back(off);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> merged{cuts.front()};
    for (std::size_t i = 1; i < cuts.size(); ++i) {
      if (cuts[i] - merged.back() > snap) merged.push_back(cuts[i]);
    }
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
      const double o0 = merged[i];
      const double o1 = merged[i + 1];
      const double len = o1 - o0;
      const double u = in.image_start + o0;
      const int oi = locate(u + 0.5 * len, 0.0);
      const IETInterval& o = intervals_[static_cast<std::size_t>(oi)];
      const double uo = wrap_angle(u - o.start);
      IETInterval piece;
      piece.length = len;
      piece.start = in.flipped ? in.start + in.length - o1 : in.start + o0;
      piece.flipped = in.flipped != o.flipped;
      piece.image_start = o.flipped ? o.image_start + o.length - (uo + len) : o.image_start + uo;
      piece.label = in.label * label_base + o.label;
      out.push_back(piece);
    }
  }
  return IETWithFlips(std::move(out));
}

Orbit iterate(const IETWithFlips& f, double x, int n, double tol) {
  Orbit orbit;
  orbit.points.push_back(wrap_angle(x));
  for (int i = 0; i < n; ++i) {
    const int k = f.locate(x, tol);
    orbit.word.push_back(f.intervals()[static_cast<std::size_t>(k)].label);
    x = f.apply(x, tol);
    orbit.points.push_back(x);
  }
  return orbit;
}

FirstReturn first_return_iet(const CyclicPolygon& p, double tau) {
  if (!(std::abs(tau) < 1.0)) throw DegenerateChord("|tau| must be below 1");
  const Point2 o = p.circumcenter();
  const double r = p.circumradius();
  const double reach = p.boundary_distance(o) / r;
  if (!(reach > kEps) || !(std::abs(tau) < reach - kEps)) {
    throw DegenerateChord("some chord of this energy misses the tile");
  }
  const double ref = angle_of(p.vertex(1) - p.vertex(0));
  const double shift = 2.0 * std::asin(tau);
  std::vector<IETInterval> f;
  for (int k = 0; k < p.size(); ++k) {
    const Edge e = p.edge(k);
    const double a_end = wrap_angle(angle_of(e.q - o) - ref);
    const double a_start = wrap_angle(angle_of(e.p - o) - ref);
    const double len = wrap_angle(a_start - a_end);
    const double t_k = angle_of(e.vector()) - ref;
    const double c = 2.0 * t_k - shift;
    // Flipped: x ↦ c − x; the image of [a_end, a_end + len) starts at c − a_end − len.
    f.push_back({a_end, len, true, c - a_end - len, k});
  }
  FirstReturn out;
  out.tau = tau;
  out.F = IETWithFlips(std::move(f));
  out.T = out.F.compose(out.F);
  return out;
}

double circle_coordinate(const Folding& f, const Crossing& c) {
  const Tiling& t = f.tiling();
  Point2 q = c.point - t.translation(c.tile);
  Vec2 d = c.direction;
  if (c.tile.color == Color::Grey) {
    q = 2.0 * t.reflection_center() - q;
    d = -d;
  }
  // Forward intersection of q + λd with the circumcircle of P0.
  const Vec2 w = q - t.center();
  const double b = dot(w, d);
  const double cc = dot(w, w) - t.radius() * t.radius();
  const double lambda = -b + std::sqrt(std::max(b * b - cc, 0.0));
  return f.relative_angle(w + lambda * d);
}

CrosscheckReport coding_crosscheck(const Folding& f, double tau, Point2 start, Vec2 dir, int n) {
  CrosscheckReport rep;
  TraceOptions opts;
  opts.max_steps = n + 1;
  opts.stop_on_recurrence = false;
  opts.escape_check_from = 0;
  const TrajectoryRecord rec = trace(f, start, dir, opts);
  if (rec.status == Status::SingularHit) {
    rep.failure = "trajectory hit a vertex";
    return rep;
  }
  if (static_cast<int>(rec.crossings.size()) < n + 1) {
    rep.failure = "trace ended early";
    return rep;
  }
  const FirstReturn fr = first_return_iet(f.tiling().base(), tau);
  try {
    const double x0 = circle_coordinate(f, rec.crossings[0]);
    const Orbit of = iterate(fr.F, x0, n);
    const Orbit ot = iterate(fr.T, x0, n / 2);
    rep.words_agree = true;
    rep.t_orbit_agrees = true;
    for (int i = 0; i <= n; ++i) {
      const double sim = circle_coordinate(f, rec.crossings[static_cast<std::size_t>(i)]);
      rep.max_error = std::max(rep.max_error, circular_distance(sim, of.points[static_cast<std::size_t>(i)]));
      if (i < n && of.word[static_cast<std::size_t>(i)] != rec.crossings[static_cast<std::size_t>(i)].edge) {
        rep.words_agree = false;
      }
      if (i % 2 == 0 && circular_distance(sim, ot.points[static_cast<std::size_t>(i / 2)]) >= 1e-6) {
        rep.t_orbit_agrees = false;
      }
    }
    rep.symbols = n;
  } catch (const HitBreakpoint&) {
    rep.failure = "orbit hit a breakpoint";
    return rep;
  }
  rep.ok = rep.words_agree && rep.t_orbit_agrees && rep.max_error < 1e-6;
  if (!rep.ok) rep.failure = "simulation and interval exchange disagree";
  return rep;
}

}  // namespace tbill
