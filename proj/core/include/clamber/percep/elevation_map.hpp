#pragma once

#include <array>
#include <string>

#include "clamber/sim/terrain.hpp"

namespace clamber::percep {

inline constexpr int kMapSize = 21;
inline constexpr int kMapCells = kMapSize * kMapSize;
inline constexpr double kMapResolution = 0.05;  // m

/// Robot-centric 21x21 height grid at 0.05 m resolution covering about
/// 1x1 m^2. Rows span the extruded y-axis, columns the x-axis; row-major
/// storage. Missing cells are NaN.
struct ElevationMap {
  std::array<double, kMapCells> grid{};
  double origin_x = 0.0;  // world x of the map center
  double origin_y = 0.0;  // virtual y of the map center
  double resolution = kMapResolution;

  double& at(int row, int col) { return grid[row * kMapSize + col]; }
  double at(int row, int col) const { return grid[row * kMapSize + col]; }

  /// World x of a column center (column kMapSize/2 sits at origin_x).
  double col_x(int col) const {
    return origin_x + (col - kMapSize / 2) * resolution;
  }

  int missing_count() const;
  void validate() const;  // dimensions are fixed; checks finite-cell bounds
};

/// Sample the heightfield around the base. The terrain is invariant along
/// y, so all rows of a column carry the same height.
ElevationMap sample_elevation(const sim::Terrain& terrain, double base_x, double base_y = 0.0);

/// Plain-text round-trip: one header line "elevation_map <origin_x>
/// <origin_y> <resolution>", then 21 rows of 21 values ("nan" for missing).
ElevationMap load_elevation_map(const std::string& path);
void save_elevation_map(const ElevationMap& map, const std::string& path);

double map_rmse(const ElevationMap& a, const ElevationMap& b);  // over mutually finite cells

}  // namespace clamber::percep
