#pragma once

#include <nlohmann/json.hpp>

#include "tbill/analysis.hpp"
#include "tbill/helicoid.hpp"
#include "tbill/iet.hpp"

namespace tbill::cli {

using nlohmann::json;

json to_json(Vec2 v);
json to_json(const TileAddress& a);
json to_json(const VertexKey& k);
json to_json(const CyclicPolygon& p);
json to_json(const TrajectoryRecord& rec, bool with_crossings);
json to_json(const IETWithFlips& f);
json to_json(const FirstReturn& r);
json to_json(const CrosscheckReport& r);
json to_json(const HelicoidModel& m);
json to_json(const SymmetryReport& r);
json to_json(const SweepResult& r);
json to_json(const GasketGrid& g);
json to_json(const EnclosedGraph& g);
json to_json(const TreeReport& r);
json to_json(const Foliation& f);
json to_json(const FlowerReport& r);
json to_json(const EscapeProfile& p);

const char* to_string(ShapeFamily f);

}  // namespace tbill::cli
