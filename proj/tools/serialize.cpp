#include "serialize.hpp"

#include <cmath>

namespace tbill::cli {

namespace {

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json point(Point2 p) { return json::array({num(p.x), num(p.y)}); }

const char* color_name(Color c) { return c == Color::White ? "white" : "grey"; }

json interval(const IETInterval& i) {
  return {{"start", i.start}, {"length", i.length}, {"flipped", i.flipped}, {"image_start", i.image_start}, {"label", i.label}};
}

json counts(const std::array<int, 5>& c) {
  json out = json::object();
  for (int s = 0; s < 5; ++s) out[std::string(to_string(static_cast<Status>(s)))] = c[static_cast<std::size_t>(s)];
  return out;
}

json saddle(const Saddle& s) {
  return {{"vertex_class", s.vertex_class}, {"vertex", point(s.vertex)}, {"theta", s.theta},
          {"ray", point(s.ray)},           {"prongs", s.prongs},        {"index", s.index},
          {"degenerate", s.degenerate}};
}

json period(const PeriodVector& v) { return {{"v", point(v.v)}, {"theta", v.theta}}; }

}  // namespace

const char* to_string(ShapeFamily f) {
  switch (f) {
    case ShapeFamily::Triangle: return "triangle";
    case ShapeFamily::Quad: return "quad";
    case ShapeFamily::Mixed: return "mixed";
  }
  return "triangle";
}

json to_json(Vec2 v) { return point(v); }

json to_json(const TileAddress& a) { return {{"m", a.m}, {"n", a.n}, {"color", color_name(a.color)}}; }

json to_json(const VertexKey& k) { return {{"class", k.cls}, {"m", k.m}, {"n", k.n}}; }

json to_json(const CyclicPolygon& p) {
  json v = json::array(), a = json::array();
  for (int i = 0; i < p.size(); ++i) {
    v.push_back(point(p.vertex(i)));
    a.push_back(p.angle(i));
  }
  return {{"kind", p.kind() == PolygonKind::Triangle ? "triangle" : "quad"},
          {"vertices", v},
          {"angles", a},
          {"circumcenter", point(p.circumcenter())},
          {"circumradius", p.circumradius()}};
}

json to_json(const TrajectoryRecord& rec, bool with_crossings) {
  json j = {{"status", std::string(to_string(rec.status))},
            {"exact_recurrence", rec.exact_recurrence},
            {"steps", rec.steps},
            {"period", rec.period},
            {"shift", {rec.shift.m, rec.shift.n}},
            {"drift", point(rec.drift)},
            {"tau", rec.tau},
            {"tau_dispersion", rec.tau_dispersion()},
            {"theta", rec.theta},
            {"start_tile", to_json(rec.start_tile)},
            {"start", point(rec.start)},
            {"start_direction", point(rec.start_direction)},
            {"repeated_tiles", rec.repeated_tiles},
            {"clearance", num(rec.clearance)},
            {"max_displacement", rec.max_displacement},
            {"growth_exponent", num(growth_exponent(rec))},
            {"singular_vertex", rec.singular_vertex ? point(*rec.singular_vertex) : json(nullptr)}};
  json disp = json::array();
  for (const auto& s : rec.displacement) disp.push_back({{"step", s.step}, {"max_displacement", s.max_displacement}, {"position", point(s.position)}});
  j["displacement"] = disp;
  if (with_crossings) {
    json cs = json::array();
    for (const Crossing& c : rec.crossings) {
      cs.push_back({{"tile", to_json(c.tile)}, {"edge", c.edge}, {"point", point(c.point)}, {"s", c.s}});
    }
    j["crossings"] = cs;
  }
  return j;
}

json to_json(const IETWithFlips& f) {
  json iv = json::array();
  json flips = json::array();
  for (const auto& i : f.intervals()) {
    iv.push_back(interval(i));
    flips.push_back(i.flipped);
  }
  return {{"intervals", iv}, {"count", f.size()}, {"breakpoints", f.breakpoints()}, {"permutation", f.permutation()},
          {"flips", flips}, {"image_defect", f.image_defect()}};
}

json to_json(const FirstReturn& r) { return {{"tau", r.tau}, {"F", to_json(r.F)}, {"T", to_json(r.T)}}; }

json to_json(const CrosscheckReport& r) {
  return {{"ok", r.ok}, {"symbols", r.symbols}, {"max_error", num(r.max_error)}, {"words_agree", r.words_agree},
          {"t_orbit_agrees", r.t_orbit_agrees}, {"failure", r.failure}};
}

json to_json(const HelicoidModel& m) {
  json a = json::array();
  for (const auto& row : m.rect.A) a.push_back(json::array({row[0], row[1], row[2]}));
  json s = json::array();
  for (const Saddle& x : m.saddle_list) s.push_back(saddle(x));
  return {{"tau", m.tau},
          {"periods", json::array({period(m.lattice.v1), period(m.lattice.v2), period(m.lattice.v3)})},
          {"A", a},
          {"H", json::array({m.rect.H[0], m.rect.H[1], m.rect.H[2]})},
          {"det", m.rect.det},
          {"saddles", s}};
}

json to_json(const SymmetryReport& r) {
  return {{"samples", r.samples},
          {"lattice_defect", r.lattice_defect},
          {"central_defect", r.central_defect},
          {"s_defect", r.s_defect},
          {"s_symmetric", r.s_symmetric},
          {"pairing_defect", r.pairing_defect},
          {"pairing_tau_defect", r.pairing_tau_defect}};
}

json to_json(const SweepResult& r) {
  const SweepConfig& c = r.config;
  json cfg = {{"family", to_string(c.family)}, {"shapes", c.shapes},     {"starts", c.starts},
              {"tau_min", c.tau_min},          {"tau_max", c.tau_max},   {"zero_tau", c.zero_tau},
              {"max_steps", c.max_steps},      {"min_angle", c.min_angle}, {"seed", c.seed}};
  json cells = json::array();
  for (const SweepCell& cell : r.cells) {
    json runs = json::array();
    for (const SweepRun& run : cell.runs) {
      runs.push_back({{"start", point(run.start)},
                      {"direction", point(run.direction)},
                      {"tau", run.tau},
                      {"theta", run.theta},
                      {"status", std::string(to_string(run.status))},
                      {"exact_recurrence", run.exact_recurrence},
                      {"period", run.period},
                      {"steps", run.steps},
                      {"drift", point(run.drift)},
                      {"exponent", num(run.exponent)},
                      {"max_displacement", run.max_displacement},
                      {"tau_dispersion", run.tau_dispersion},
                      {"redrawn", run.redrawn}});
    }
    cells.push_back({{"index", cell.index}, {"shape", to_json(cell.shape)}, {"counts", counts(cell.counts)}, {"runs", runs}});
  }
  return {{"config", cfg}, {"totals", counts(r.totals)}, {"cells", cells}};
}

json to_json(const GasketGrid& g) {
  json rows = json::array();
  for (int y = 0; y < g.size; ++y) {
    json row = json::array();
    for (int x = 0; x < g.size; ++x) row.push_back(g.at(x, y));
    rows.push_back(std::move(row));
  }
  return {{"size", g.size}, {"cap", g.cap}, {"depth", rows}};
}

json to_json(const EnclosedGraph& g) {
  json v = json::array(), e = json::array(), t = json::array();
  for (const auto& k : g.vertices) v.push_back(to_json(k));
  for (const auto& [a, b] : g.edges) e.push_back(json::array({to_json(a), to_json(b)}));
  for (const auto& a : g.tiles) t.push_back(to_json(a));
  return {{"vertices", v}, {"edges", e}, {"tiles", t}};
}

json to_json(const TreeReport& r) {
  return {{"is_tree", r.is_tree}, {"enclosed_tiles", r.enclosed_tiles}, {"vertices", r.vertices},
          {"edges", r.edges},     {"components", r.components}};
}

json to_json(const Foliation& f) {
  json leaves = json::array();
  for (const auto& l : f.leaves) {
    json segs = json::array();
    for (const auto& s : l.segments) segs.push_back({{"tile", to_json(s.tile)}, {"p", point(s.p)}, {"q", point(s.q)}});
    leaves.push_back({{"tau", l.tau}, {"singular", l.singular}, {"segments", segs}});
  }
  return {{"theta", f.theta}, {"singular_taus", f.singular_taus}, {"leaves", leaves}};
}

json to_json(const FlowerReport& r) {
  json petals = json::array();
  for (const Petal& p : r.petals) {
    petals.push_back({{"first_tile", to_json(p.first_tile)},
                      {"last_tile", to_json(p.last_tile)},
                      {"crossings", p.crossings},
                      {"adjacent_tiles", p.adjacent_tiles},
                      {"shared_edge_inside", p.shared_edge_inside},
                      {"through_other_vertices", p.through_other_vertices}});
  }
  return {{"vertex", to_json(r.vertex)}, {"point", point(r.point)},           {"theta", r.theta},
          {"tau", r.tau},                {"branches", r.branches},           {"petals", petals},
          {"open_branches", r.open_branches}, {"other_petal", r.other_petal}, {"conjecture_holds", r.conjecture_holds}};
}

json to_json(const EscapeProfile& p) {
  return {{"exponent", num(p.exponent)}, {"direction", point(p.direction)}, {"residual", num(p.residual)}, {"speed", num(p.speed)}};
}

}  // namespace tbill::cli
