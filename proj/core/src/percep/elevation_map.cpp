#include "clamber/percep/elevation_map.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace clamber::percep {

int ElevationMap::missing_count() const {
  int n = 0;
  for (double v : grid)
    if (std::isnan(v)) ++n;
  return n;
}

void ElevationMap::validate() const {
  if (!(resolution > 0.0)) throw std::invalid_argument("elevation map resolution must be > 0");
  for (double v : grid) {
    if (std::isnan(v)) continue;
    if (!(v >= -10.0 && v <= 10.0))
      throw std::invalid_argument("elevation map cell outside [-10, 10] m");
  }
}

ElevationMap sample_elevation(const sim::Terrain& terrain, double base_x, double base_y) {
  ElevationMap map;
  map.origin_x = base_x;
  map.origin_y = base_y;
  for (int col = 0; col < kMapSize; ++col) {
    const double h = sim::terrain_height(terrain, map.col_x(col));
    for (int row = 0; row < kMapSize; ++row) map.at(row, col) = h;
  }
  return map;
}

ElevationMap load_elevation_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open elevation map: " + path);
  std::string tag;
  ElevationMap map;
  in >> tag >> map.origin_x >> map.origin_y >> map.resolution;
  if (tag != "elevation_map")
    throw std::runtime_error("bad elevation map header in " + path);
  for (int i = 0; i < kMapCells; ++i) {
    std::string token;
    if (!(in >> token)) throw std::runtime_error("elevation map truncated: " + path);
    if (token == "nan")
      map.grid[i] = std::nan("");
    else
      map.grid[i] = std::stod(token);
  }
  map.validate();
  return map;
}

void save_elevation_map(const ElevationMap& map, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write elevation map: " + path);
  char buf[96];
  std::snprintf(buf, sizeof buf, "elevation_map %.17g %.17g %.17g\n", map.origin_x,
                map.origin_y, map.resolution);
  out << buf;
  for (int row = 0; row < kMapSize; ++row) {
    for (int col = 0; col < kMapSize; ++col) {
      const double v = map.at(row, col);
      if (std::isnan(v)) {
        out << "nan";
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
      }
      out << (col + 1 == kMapSize ? '\n' : ' ');
    }
  }
}

double map_rmse(const ElevationMap& a, const ElevationMap& b) {
  double sum = 0.0;
  int n = 0;
  for (int i = 0; i < kMapCells; ++i) {
    if (std::isnan(a.grid[i]) || std::isnan(b.grid[i])) continue;
    const double d = a.grid[i] - b.grid[i];
    sum += d * d;
    ++n;
  }
  return n == 0 ? 0.0 : std::sqrt(sum / n);
}

}  // namespace clamber::percep
