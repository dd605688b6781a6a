#pragma once

#include <string>
#include <vector>

namespace clamber::sim {

/// Piecewise-constant heightfield, extruded uniformly along the virtual
/// y-axis. Segment i covers [x_start_i, x_start_{i+1}); the last segment
/// extends to +infinity, the first also covers everything left of it.
struct Terrain {
  struct Segment {
    double x_start;
    double height;
  };
  std::vector<Segment> segments;
  double edge_x = 0.0;  // principal platform edge (coincides with a boundary)
  double edge_height = 0.0;

  void validate() const;  // throws std::invalid_argument

  double min_height() const;
  double max_height() const;
};

/// Height of the segment containing x. Queries exactly at a boundary
/// resolve to the downstream (right) segment.
double terrain_height(const Terrain& terrain, double x);

/// Flat ground at height 0.
Terrain flat_terrain();

/// Ground at 0 for x < edge_x, platform at `height` beyond it.
Terrain platform_terrain(double edge_x, double height);

/// Platform of finite extent: up at edge_x, back down at edge_x + width.
Terrain platform_block_terrain(double edge_x, double height, double width);

/// Deepest penetration escape for a point inside the solid region.
/// Returns depth <= 0 when the point is free. The normal points out of the
/// terrain (up for top surfaces, +-x for vertical faces at steps).
struct TerrainContact {
  double depth = 0.0;
  double nx = 0.0;
  double nz = 1.0;
};
TerrainContact terrain_contact(const Terrain& terrain, double px, double pz);

/// Structured text round-trip ("segment <x> <h>" / "platform_edge <x> <h>").
Terrain load_terrain(const std::string& path);
void save_terrain(const Terrain& terrain, const std::string& path);

}  // namespace clamber::sim
