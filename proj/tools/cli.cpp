#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "render.hpp"
#include "serialize.hpp"

namespace tbill::cli {

namespace {

constexpr double kDeg = kPi / 180.0;

struct ShapeArgs {
  std::string triangle;
  std::string quad;
  double side = 0.0;
};

struct SceneArgs {
  double tau = 0.0;
  double theta_deg = 20.0;
  std::string start;
  std::string dir;
  std::int64_t steps = 100000;
  bool strict = false;
  bool crossings = false;
};

struct Outputs {
  std::string json_path;
  std::string svg_path;
};

std::vector<double> parse_list(const std::string& s, std::size_t n, const char* what) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size() && item.find_first_not_of(' ', used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string("cannot parse ") + what + ": '" + s + "'");
    }
  }
  if (out.size() != n) throw ConfigError(std::string(what) + " needs " + std::to_string(n) + " comma-separated numbers");
  return out;
}

CyclicPolygon make_shape(const ShapeArgs& a) {
  if (a.triangle.empty() == a.quad.empty()) throw ConfigError("give exactly one of --triangle and --quad");
  CyclicPolygon p = [&] {
    if (!a.triangle.empty()) {
      const auto v = parse_list(a.triangle, 3, "--triangle");
      if (std::abs(v[0] + v[1] + v[2] - 180.0) > 1e-6) throw ConfigError("triangle angles must sum to 180 degrees");
      for (double x : v) {
        if (!(x > 0.0)) throw ConfigError("triangle angles must be positive");
      }
      return CyclicPolygon::triangle_from_angles(v[0] * kDeg, v[1] * kDeg, kPi - (v[0] + v[1]) * kDeg);
    }
    const auto v = parse_list(a.quad, 4, "--quad");
    return CyclicPolygon::quad_from_circle_positions({v[0] * kDeg, v[1] * kDeg, v[2] * kDeg, v[3] * kDeg});
  }();
  if (a.side > 0.0) {
    const int ab = p.kind() == PolygonKind::Triangle ? 2 : 0;
    const double k = a.side / p.edge(ab).length();
    std::vector<Point2> v;
    for (const Point2& x : p.vertices()) v.push_back(k * x);
    p = CyclicPolygon::from_vertices(v);
  } else if (a.side < 0.0) {
    throw ConfigError("--side must be positive");
  }
  return p;
}

void add_shape(CLI::App* app, ShapeArgs& a) {
  app->add_option("--triangle", a.triangle, "Triangle angles in degrees, e.g. 70,60,50");
  app->add_option("--quad", a.quad, "Cyclic quadrilateral as four circle positions in degrees, clockwise");
  app->add_option("--side", a.side, "Rescale so that side AB has this length");
}

void add_scene(CLI::App* app, SceneArgs& s) {
  app->add_option("--tau", s.tau, "Energy of the start line");
  app->add_option("--theta", s.theta_deg, "Direction of the start line from AB, degrees (default 20)");
  app->add_option("--start", s.start, "Start point x,y (overrides --tau/--theta, needs --dir)");
  app->add_option("--dir", s.dir, "Start direction dx,dy");
  app->add_option("--steps", s.steps, "Step budget");
  app->add_flag("--strict", s.strict, "Exit with code 3 when the trajectory hits a vertex");
  app->add_flag("--crossings", s.crossings, "Include every crossing in the JSON record");
}

void add_outputs(CLI::App* app, Outputs& o, bool svg) {
  app->add_option("--out", o.json_path, "Write JSON here instead of standard output");
  if (svg) app->add_option("--svg", o.svg_path, "Write an SVG rendering");
}

TrajectoryRecord run_scene(const Folding& f, const SceneArgs& s, bool keep_crossings) {
  if (s.steps <= 0) throw ConfigError("--steps must be positive");
  const Tiling& t = f.tiling();
  TraceOptions opts;
  opts.max_steps = s.steps;
  opts.keep_crossings = keep_crossings;
  if (!s.start.empty() || !s.dir.empty()) {
    if (s.start.empty() || s.dir.empty()) throw ConfigError("--start and --dir go together");
    const auto p = parse_list(s.start, 2, "--start");
    const auto d = parse_list(s.dir, 2, "--dir");
    if (d[0] == 0.0 && d[1] == 0.0) throw ConfigError("--dir must be nonzero");
    return trace(f, {p[0], p[1]}, {d[0], d[1]}, opts);
  }
  if (!(std::abs(s.tau) < 1.0)) throw ConfigError("--tau must lie in (-1, 1)");
  const CyclicPolygon& p0 = t.base();
  const Vec2 d = f.direction(s.theta_deg * kDeg);
  const Point2 o = p0.circumcenter();
  const Point2 base = o - s.tau * p0.circumradius() * perp(d);
  // Clip the line base + s·d to the tile and start at the middle of the piece inside.
  double lo = -1e300, hi = 1e300;
  const Point2 c = p0.barycenter();
  for (int k = 0; k < p0.size(); ++k) {
    const Edge e = p0.edge(k);
    Vec2 n = perp(e.vector());
    if (dot(n, c - e.p) < 0) n = -n;
    const double num = dot(n, base - e.p);
    const double den = dot(n, d);
    if (std::abs(den) < 1e-15) {
      if (num <= 0) hi = lo - 1;
      continue;
    }
    const double s0 = -num / den;
    if (den > 0) lo = std::max(lo, s0);
    else hi = std::min(hi, s0);
  }
  if (!(hi - lo > 1e-9 * p0.circumradius())) throw DegenerateChord("the line of this energy and direction misses the base tile");
  return trace(f, {0, 0, Color::White}, base + 0.5 * (lo + hi) * d, d, opts);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
}

void emit(const json& j, const Outputs& o, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (o.json_path.empty()) out << text;
  else write_text(o.json_path, text);
}

// Loads a JSON object of option values; they go in front of the command-line flags, so
// flags given explicitly win.
std::vector<std::string> config_args(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  std::vector<std::string> out;
  for (const auto& [key, value] : j.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& x : value) {
        if (!x.is_number()) throw ConfigError("config key " + key + ": arrays must hold numbers");
        joined += (joined.empty() ? "" : ",") + x.dump();
      }
      out.push_back(flag);
      out.push_back(joined);
    } else if (value.is_string()) {
      out.push_back(flag);
      out.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      out.push_back(flag);
      out.push_back(value.dump());
    } else {
      throw ConfigError("config key " + key + " has an unsupported value");
    }
  }
  return out;
}

int exit_code(const Error& e) {
  if (dynamic_cast<const ConfigError*>(&e) != nullptr) return 2;
  if (dynamic_cast<const PreconditionViolation*>(&e) != nullptr) return 1;
  return 4;
}

}  // namespace

int run(const std::vector<std::string>& raw, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tiling billiards: traces, interval exchanges, helicoid models and sweeps", "tbill"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file of option values; explicit flags override it");

  ShapeArgs shape;
  SceneArgs scene;
  Outputs outputs;

  auto* trace_cmd = app.add_subcommand("trace", "Trace one trajectory");
  add_shape(trace_cmd, shape);
  add_scene(trace_cmd, scene);
  add_outputs(trace_cmd, outputs, true);

  SweepConfig sweep;
  std::string family = "triangle";
  double min_angle_deg = sweep.min_angle / kDeg;
  auto* sweep_cmd = app.add_subcommand("sweep", "Classify trajectories over random shapes and starts");
  sweep_cmd->add_option("--family", family, "triangle, quad or mixed")->check(CLI::IsMember({"triangle", "quad", "mixed"}));
  sweep_cmd->add_option("--shapes", sweep.shapes, "Number of random shapes");
  sweep_cmd->add_option("--starts", sweep.starts, "Starts per shape");
  sweep_cmd->add_option("--tau-min", sweep.tau_min, "Smallest |tau|");
  sweep_cmd->add_option("--tau-max", sweep.tau_max, "Largest |tau|");
  sweep_cmd->add_flag("--zero-tau", sweep.zero_tau, "Start every trajectory at the circumcentre");
  sweep_cmd->add_option("--steps", sweep.max_steps, "Step budget per trajectory");
  sweep_cmd->add_option("--min-angle", min_angle_deg, "Smallest angle (or arc between quadrilateral vertices), degrees");
  sweep_cmd->add_option("--seed", sweep.seed, "Random seed");
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0: TILING_BILLIARDS_THREADS or all cores)");
  add_outputs(sweep_cmd, outputs, false);

  double orbit_start = 0.0;
  int orbit_length = 0;
  int crosscheck = 0;
  auto* iet_cmd = app.add_subcommand("iet", "First-return interval exchanges F and T = F^2");
  add_shape(iet_cmd, shape);
  iet_cmd->add_option("--tau", scene.tau, "Energy");
  iet_cmd->add_option("--theta", scene.theta_deg, "Direction for --crosscheck, degrees from AB");
  iet_cmd->add_option("--orbit-start", orbit_start, "Circle coordinate (radians) of an F-orbit to list");
  iet_cmd->add_option("--orbit-length", orbit_length, "Number of F-iterates to list");
  iet_cmd->add_option("--crosscheck", crosscheck, "Compare this many crossings of a traced trajectory with the F-orbit");
  add_outputs(iet_cmd, outputs, false);

  int samples = 1000;
  std::uint64_t seed = 1;
  auto* heli_cmd = app.add_subcommand("helicoid", "Period lattice, rectification, saddles and genus");
  add_shape(heli_cmd, shape);
  heli_cmd->add_option("--tau", scene.tau, "Energy");
  heli_cmd->add_option("--samples", samples, "Points used for the symmetry check");
  heli_cmd->add_option("--seed", seed, "Random seed");
  add_outputs(heli_cmd, outputs, false);

  int grid = 256;
  int depth = 30;
  int survivor_samples = 0;
  int threads = 0;
  std::string point_arg;
  std::string pgm_path;
  auto* gasket_cmd = app.add_subcommand("gasket", "Depth map of the fully subtractive simplex algorithm");
  gasket_cmd->add_option("--grid", grid, "Grid size");
  gasket_cmd->add_option("--depth", depth, "Depth cap");
  gasket_cmd->add_option("--samples", survivor_samples, "Monte-Carlo samples for survivor fractions");
  gasket_cmd->add_option("--seed", seed, "Random seed");
  gasket_cmd->add_option("--threads", threads, "Worker threads");
  gasket_cmd->add_option("--point", point_arg, "Depth of one simplex point x,y,z");
  gasket_cmd->add_option("--triangle", shape.triangle, "Depth of a triangle (angles in degrees) through its gasket coordinates");
  gasket_cmd->add_option("--pgm", pgm_path, "Write the depth map as binary PGM");
  add_outputs(gasket_cmd, outputs, false);

  auto* tree_cmd = app.add_subcommand("treecheck", "Graph of the tiling enclosed by a periodic trajectory");
  add_shape(tree_cmd, shape);
  add_scene(tree_cmd, scene);
  add_outputs(tree_cmd, outputs, true);

  int leaves = 10;
  double region = 3.0;
  bool flower = false;
  int vertex_class = 0;
  auto* fol_cmd = app.add_subcommand("foliation", "Parallel foliation for one angle parameter");
  add_shape(fol_cmd, shape);
  fol_cmd->add_option("--theta", scene.theta_deg, "Angle parameter, degrees from AB");
  fol_cmd->add_option("--leaves", leaves, "Regular leaves");
  fol_cmd->add_option("--region", region, "Half-width of the drawn region, in circumradii");
  fol_cmd->add_flag("--flower", flower, "Run the petal check at a vertex");
  fol_cmd->add_option("--vertex-class", vertex_class, "Vertex class for --flower");
  add_outputs(fol_cmd, outputs, true);

  // Config values are spliced in right after the subcommand name.
  std::vector<std::string> args;
  std::string config_file;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == "--config" && i + 1 < raw.size()) {
      config_file = raw[++i];
    } else if (raw[i].rfind("--config=", 0) == 0) {
      config_file = raw[i].substr(9);
    } else {
      args.push_back(raw[i]);
    }
  }

  try {
    if (!config_file.empty() && !args.empty()) {
      const auto extra = config_args(config_file);
      args.insert(args.begin() + 1, extra.begin(), extra.end());
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    json j;
    j["command"] = cmd->get_name();
    int code = 0;

    if (cmd == trace_cmd || cmd == tree_cmd) {
      const CyclicPolygon p = make_shape(shape);
      const Tiling t(p);
      const Folding f(t);
      const bool keep = cmd == tree_cmd || scene.crossings || !outputs.svg_path.empty();
      const TrajectoryRecord rec = run_scene(f, scene, keep);
      j["shape"] = to_json(p);
      j["record"] = to_json(rec, scene.crossings);
      if (cmd == trace_cmd) {
        if (rec.status != Status::Periodic) j["escape_profile"] = to_json(escape_profile(rec));
        if (!outputs.svg_path.empty()) write_text(outputs.svg_path, svg_trajectory(t, rec));
      } else {
        if (rec.status != Status::Periodic) {
          throw PreconditionViolation("the trajectory is not periodic (status " + std::string(to_string(rec.status)) + ")");
        }
        const auto loop = closed_loop(rec);
        const EnclosedGraph g = enclosed_region(t, loop);
        j["tree"] = to_json(tree_check(g));
        j["graph"] = to_json(g);
        if (!outputs.svg_path.empty()) write_text(outputs.svg_path, svg_enclosure(t, loop, g));
      }
      if (scene.strict && rec.status == Status::SingularHit) code = 3;
    } else if (cmd == sweep_cmd) {
      sweep.family = family == "quad" ? ShapeFamily::Quad : family == "mixed" ? ShapeFamily::Mixed : ShapeFamily::Triangle;
      sweep.min_angle = min_angle_deg * kDeg;
      j["sweep"] = to_json(parameter_sweep(sweep));
    } else if (cmd == iet_cmd) {
      const CyclicPolygon p = make_shape(shape);
      const FirstReturn r = first_return_iet(p, scene.tau);
      j["shape"] = to_json(p);
      j["iet"] = to_json(r);
      if (orbit_length > 0) {
        const Orbit o = iterate(r.F, wrap_angle(orbit_start), orbit_length);
        j["orbit"] = {{"points", o.points}, {"word", o.word}};
      }
      if (crosscheck > 0) {
        const Tiling t(p);
        const Folding f(t);
        const Vec2 d = f.direction(scene.theta_deg * kDeg);
        const Point2 start = p.circumcenter() - scene.tau * p.circumradius() * perp(d);
        j["crosscheck"] = to_json(coding_crosscheck(f, scene.tau, start, d, crosscheck));
      }
    } else if (cmd == heli_cmd) {
      const CyclicPolygon p = make_shape(shape);
      const Tiling t(p);
      const Folding f(t);
      const HelicoidModel m = make_helicoid(f, scene.tau);
      j["shape"] = to_json(p);
      j["model"] = to_json(m);
      try {
        const EulerGenus g = euler_genus(f, scene.tau);
        j["chi"] = g.chi;
        j["genus"] = g.genus;
      } catch (const Error& e) {
        j["chi"] = nullptr;
        j["genus"] = nullptr;
        j["genus_unavailable"] = e.what();
      }
      j["connectedness_assumed"] = true;
      if (samples > 0) j["symmetries"] = to_json(check_symmetries(m, samples, seed));
    } else if (cmd == gasket_cmd) {
      if (grid < 2 || depth < 0) throw ConfigError("need --grid >= 2 and --depth >= 0");
      const GasketGrid g = gasket_grid(grid, depth, threads);
      bool symmetric = true;
      const int big = g.size - 1;
      for (int y = 0; y < g.size && symmetric; ++y) {
        for (int x = 0; x <= y && symmetric; ++x) {
          symmetric = g.at(x, y) == g.at(big - y, big - x) && g.at(x, y) == g.at(x, big - y + x);
        }
      }
      j["grid"] = to_json(g);
      j["symmetric"] = symmetric;
      if (survivor_samples > 0) {
        j["survivors"] = {{"samples", survivor_samples},
                          {"simplex", gasket_survivor_fraction(survivor_samples, depth, seed)},
                          {"triangles", triangle_survivor_fraction(survivor_samples, depth, seed)}};
      }
      if (!point_arg.empty()) {
        const auto v = parse_list(point_arg, 3, "--point");
        const double s = v[0] + v[1] + v[2];
        if (!(s > 0) || v[0] < 0 || v[1] < 0 || v[2] < 0) throw ConfigError("--point needs nonnegative coordinates");
        j["point"] = {{"x", {v[0] / s, v[1] / s, v[2] / s}}, {"depth", gasket_depth({{v[0] / s, v[1] / s, v[2] / s}}, depth)}};
      }
      if (!shape.triangle.empty()) {
        const CyclicPolygon p = make_shape(shape);
        const auto gc = gasket_coordinates(p);
        j["triangle"] = {{"angles", to_json(p)["angles"]},
                         {"gasket_coordinates", gc ? json(gc->x) : json(nullptr)},
                         {"depth", triangle_gasket_depth(p, depth)}};
      }
      if (!pgm_path.empty()) write_text(pgm_path, pgm_depth(g));
    } else if (cmd == fol_cmd) {
      const CyclicPolygon p = make_shape(shape);
      const Tiling t(p);
      const Folding f(t);
      if (!(region > 0) || leaves < 0) throw ConfigError("need --region > 0 and --leaves >= 0");
      const BBox box = BBox::around(t.center(), region * t.radius());
      const Foliation fol = parallel_foliation(f, scene.theta_deg * kDeg, box, leaves);
      j["shape"] = to_json(p);
      j["foliation"] = to_json(fol);
      if (flower) {
        if (vertex_class < 0 || vertex_class >= t.vertex_class_count()) throw ConfigError("--vertex-class out of range");
        j["flower"] = to_json(flower_check(f, {vertex_class, 0, 0}, scene.theta_deg * kDeg));
      }
      if (!outputs.svg_path.empty()) write_text(outputs.svg_path, svg_foliation(t, fol, box));
    }
    emit(j, outputs, out);
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    const int code = exit_code(e);
    if (code == 2) err << cmd->help();
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tbill::cli
