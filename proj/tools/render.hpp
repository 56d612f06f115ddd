#pragma once

#include <string>

#include "tbill/analysis.hpp"

namespace tbill::cli {

/// SVG 1.1 drawings, y axis up, view box fitted to the drawn curve with a 5% margin.
/// Tiles are drawn only when the box holds at most `max_tiles` of them.
std::string svg_trajectory(const Tiling& t, const TrajectoryRecord& rec, int max_tiles = 4000);
std::string svg_foliation(const Tiling& t, const Foliation& f, const BBox& region, int max_tiles = 4000);
std::string svg_enclosure(const Tiling& t, const std::vector<Point2>& loop, const EnclosedGraph& g, int max_tiles = 4000);

/// Binary PGM (P5); depth d maps to 255·d/cap, pixels outside the simplex to 0.
std::string pgm_depth(const GasketGrid& g);

}  // namespace tbill::cli
