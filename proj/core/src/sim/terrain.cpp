#include "clamber/sim/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace clamber::sim {

void Terrain::validate() const {
  if (segments.empty()) throw std::invalid_argument("terrain needs at least one segment");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].height < 0.0) throw std::invalid_argument("terrain heights must be >= 0");
    if (i > 0 && !(segments[i].x_start > segments[i - 1].x_start))
      throw std::invalid_argument("terrain segments must be strictly increasing in x_start");
  }
  if (segments.size() > 1) {
    bool on_boundary = false;
    for (std::size_t i = 1; i < segments.size(); ++i) {
      if (segments[i].x_start == edge_x &&
          (segments[i].height == edge_height || segments[i - 1].height == edge_height))
        on_boundary = true;
    }
    if (!on_boundary)
      throw std::invalid_argument("platform_edge must coincide with a segment boundary");
  }
}

double Terrain::min_height() const {
  double h = segments.front().height;
  for (const auto& s : segments) h = std::min(h, s.height);
  return h;
}

double Terrain::max_height() const {
  double h = segments.front().height;
  for (const auto& s : segments) h = std::max(h, s.height);
  return h;
}

double terrain_height(const Terrain& terrain, double x) {
  // downstream segment wins at boundaries: last segment with x_start <= x
  double h = terrain.segments.front().height;
  for (const auto& s : terrain.segments) {
    if (x >= s.x_start) h = s.height;
  }
  return h;
}

Terrain flat_terrain() {
  Terrain t;
  t.segments = {{-1e6, 0.0}};
  t.edge_x = 0.0;
  t.edge_height = 0.0;
  return t;
}

Terrain platform_terrain(double edge_x, double height) {
  Terrain t;
  t.segments = {{-1e6, 0.0}, {edge_x, height}};
  t.edge_x = edge_x;
  t.edge_height = height;
  t.validate();
  return t;
}

Terrain platform_block_terrain(double edge_x, double height, double width) {
  Terrain t;
  t.segments = {{-1e6, 0.0}, {edge_x, height}, {edge_x + width, 0.0}};
  t.edge_x = edge_x;
  t.edge_height = height;
  t.validate();
  return t;
}

TerrainContact terrain_contact(const Terrain& terrain, double px, double pz) {
  TerrainContact c;
  const double h_here = terrain_height(terrain, px);
  if (pz >= h_here) {
    c.depth = h_here - pz;  // free: depth <= 0
    return c;
  }
  // Inside the solid. Escape up through the local top...
  double best_depth = h_here - pz;
  double nx = 0.0, nz = 1.0;
  // ...or sideways through a vertical face at a step whose low side is
  // below the point.
  for (std::size_t i = 1; i < terrain.segments.size(); ++i) {
    const double xb = terrain.segments[i].x_start;
    const double h_left = terrain.segments[i - 1].height;
    const double h_right = terrain.segments[i].height;
    if (h_right > h_left && px >= xb && pz > h_left) {
      // rising step: exit to the left through the face at xb
      const double d = px - xb;
      if (d < best_depth) {
        best_depth = d;
        nx = -1.0;
        nz = 0.0;
      }
    }
    if (h_left > h_right && px < xb && pz > h_right) {
      // falling step: exit to the right
      const double d = xb - px;
      if (d < best_depth) {
        best_depth = d;
        nx = 1.0;
        nz = 0.0;
      }
    }
  }
  c.depth = best_depth;
  c.nx = nx;
  c.nz = nz;
  return c;
}

Terrain load_terrain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open terrain file: " + path);
  Terrain t;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string kind;
    ss >> kind;
    if (kind == "segment") {
      Terrain::Segment s{};
      if (!(ss >> s.x_start >> s.height))
        throw std::runtime_error("terrain file " + path + ": bad segment at line " +
                                 std::to_string(line_no));
      t.segments.push_back(s);
    } else if (kind == "platform_edge") {
      if (!(ss >> t.edge_x >> t.edge_height))
        throw std::runtime_error("terrain file " + path + ": bad platform_edge at line " +
                                 std::to_string(line_no));
    } else {
      throw std::runtime_error("terrain file " + path + ": unknown directive '" + kind +
                               "' at line " + std::to_string(line_no));
    }
  }
  t.validate();
  return t;
}

void save_terrain(const Terrain& terrain, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write terrain file: " + path);
  out << "# piecewise-constant heightfield\n";
  char buf[96];
  for (const auto& s : terrain.segments) {
    std::snprintf(buf, sizeof buf, "segment %.17g %.17g\n", s.x_start, s.height);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "platform_edge %.17g %.17g\n", terrain.edge_x,
                terrain.edge_height);
  out << buf;
}

}  // namespace clamber::sim
