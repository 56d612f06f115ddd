#include "render.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace tbill::cli {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string pt(Point2 p) { return fmt(p.x) + "," + fmt(-p.y); }

const char* status_color(Status s) {
  switch (s) {
    case Status::Periodic: return "#1f77b4";
    case Status::LinearEscape: return "#d62728";
    case Status::NonLinearCandidate: return "#9467bd";
    case Status::Unresolved: return "#7f7f7f";
    case Status::SingularHit: return "#ff7f0e";
  }
  return "#000000";
}

class Canvas {
 public:
  explicit Canvas(BBox box) {
    const double w = std::max(box.hi.x - box.lo.x, 1e-9), h = std::max(box.hi.y - box.lo.y, 1e-9);
    box_ = box.expanded(0.05 * std::max(w, h));
    stroke_ = 0.002 * std::max(box_.hi.x - box_.lo.x, box_.hi.y - box_.lo.y);
  }

  double stroke() const { return stroke_; }
  const BBox& box() const { return box_; }

  void tiles(const Tiling& t, int max_tiles) {
    const auto addrs = t.tiles_in_region(box_);
    if (static_cast<int>(addrs.size()) > max_tiles) return;
    body_ << "<g stroke=\"#999999\" stroke-width=\"" << fmt(stroke_ * 0.5) << "\">\n";
    for (const TileAddress& a : addrs) {
      const CyclicPolygon p = t.tile_at(a);
      body_ << "<polygon fill=\"" << (a.color == Color::White ? "#ffffff" : "#e6e6e6") << "\" points=\"";
      for (int i = 0; i < p.size(); ++i) body_ << (i ? " " : "") << pt(p.vertex(i));
      body_ << "\"/>\n";
    }
    body_ << "</g>\n";
  }

  void polyline(const std::vector<Point2>& pts, const char* color, bool closed, double width) {
    if (pts.size() < 2) return;
    body_ << "<" << (closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
          << fmt(width) << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << pt(pts[i]);
    body_ << "\"/>\n";
  }

  void dot(Point2 p, const char* color, double r) {
    body_ << "<circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(-p.y) << "\" r=\"" << fmt(r) << "\" fill=\"" << color << "\"/>\n";
  }

  std::string str() const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << fmt(box_.lo.x) << " " << fmt(-box_.hi.y)
        << " " << fmt(box_.hi.x - box_.lo.x) << " " << fmt(box_.hi.y - box_.lo.y) << "\">\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  BBox box_;
  double stroke_ = 0.01;
  std::ostringstream body_;
};

BBox bounds(const std::vector<Point2>& pts) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  BBox b{{inf, inf}, {-inf, -inf}};
  for (const Point2& p : pts) {
    b.lo.x = std::min(b.lo.x, p.x);
    b.lo.y = std::min(b.lo.y, p.y);
    b.hi.x = std::max(b.hi.x, p.x);
    b.hi.y = std::max(b.hi.y, p.y);
  }
  return b;
}

}  // namespace

std::string svg_trajectory(const Tiling& t, const TrajectoryRecord& rec, int max_tiles) {
  std::vector<Point2> pts{rec.start};
  for (const Crossing& c : rec.crossings) pts.push_back(c.point);
  Canvas cv(bounds(pts));
  cv.tiles(t, max_tiles);
  cv.polyline(pts, status_color(rec.status), false, cv.stroke());
  cv.dot(rec.start, "#000000", 2 * cv.stroke());
  if (rec.singular_vertex) cv.dot(*rec.singular_vertex, status_color(Status::SingularHit), 3 * cv.stroke());
  return cv.str();
}

std::string svg_foliation(const Tiling& t, const Foliation& f, const BBox& region, int max_tiles) {
  Canvas cv(region);
  cv.tiles(t, max_tiles);
  for (const auto& leaf : f.leaves) {
    const char* color = leaf.singular ? "#d62728" : "#1f77b4";
    for (const auto& s : leaf.segments) cv.polyline({s.p, s.q}, color, false, cv.stroke() * (leaf.singular ? 1.0 : 0.6));
  }
  return cv.str();
}

std::string svg_enclosure(const Tiling& t, const std::vector<Point2>& loop, const EnclosedGraph& g, int max_tiles) {
  Canvas cv(bounds(loop));
  cv.tiles(t, max_tiles);
  cv.polyline(loop, status_color(Status::Periodic), true, cv.stroke());
  for (const auto& [a, b] : g.edges) cv.polyline({t.vertex_point(a), t.vertex_point(b)}, "#2ca02c", false, 2 * cv.stroke());
  for (const auto& v : g.vertices) cv.dot(t.vertex_point(v), "#2ca02c", 3 * cv.stroke());
  return cv.str();
}

std::string pgm_depth(const GasketGrid& g) {
  std::string out = "P5\n" + std::to_string(g.size) + " " + std::to_string(g.size) + "\n255\n";
  for (int y = 0; y < g.size; ++y) {
    for (int x = 0; x < g.size; ++x) {
      const int d = g.at(x, y);
      out.push_back(static_cast<char>(d <= 0 || g.cap <= 0 ? 0 : (255 * d) / g.cap));
    }
  }
  return out;
}

}  // namespace tbill::cli
