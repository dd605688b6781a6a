#include "clamber/percep/restore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace clamber::percep {

namespace {

double neighborhood_median(const ElevationMap& map, int row, int col, int half_window) {
  double vals[121];
  int n = 0;
  for (int r = std::max(0, row - half_window); r <= std::min(kMapSize - 1, row + half_window);
       ++r) {
    for (int c = std::max(0, col - half_window); c <= std::min(kMapSize - 1, col + half_window);
         ++c) {
      if (r == row && c == col) continue;
      const double v = map.at(r, c);
      if (!std::isnan(v)) vals[n++] = v;
    }
  }
  if (n == 0) return std::nan("");
  std::sort(vals, vals + n);
  return (n % 2 == 1) ? vals[n / 2] : 0.5 * (vals[n / 2 - 1] + vals[n / 2]);
}

}  // namespace

ElevationMap filter_outliers(const ElevationMap& map, double threshold, int half_window) {
  ElevationMap out = map;
  for (int row = 0; row < kMapSize; ++row) {
    for (int col = 0; col < kMapSize; ++col) {
      const double v = map.at(row, col);
      if (std::isnan(v)) continue;
      const double med = neighborhood_median(map, row, col, half_window);
      if (std::isnan(med)) continue;
      if (std::abs(v - med) > threshold) out.at(row, col) = std::nan("");
    }
  }
  return out;
}

ElevationMap inpaint(const ElevationMap& map, double tol, int max_iters) {
  if (map.missing_count() == kMapCells)
    throw std::invalid_argument("inpaint: map has no known cells");
  ElevationMap out = map;
  std::vector<int> missing;
  missing.reserve(kMapCells);
  for (int i = 0; i < kMapCells; ++i)
    if (std::isnan(map.grid[i])) missing.push_back(i);
  if (missing.empty()) return out;

  for (int iter = 0; iter < max_iters; ++iter) {
    double max_change = 0.0;
    bool all_filled = true;
    for (int idx : missing) {
      const int row = idx / kMapSize, col = idx % kMapSize;
      double sum = 0.0;
      int n = 0;
      const int neigh[4][2] = {{row - 1, col}, {row + 1, col}, {row, col - 1}, {row, col + 1}};
      for (const auto& rc : neigh) {
        if (rc[0] < 0 || rc[0] >= kMapSize || rc[1] < 0 || rc[1] >= kMapSize) continue;
        const double v = out.at(rc[0], rc[1]);
        if (!std::isnan(v)) {
          sum += v;
          ++n;
        }
      }
      if (n == 0) {
        all_filled = false;
        continue;
      }
      const double next = sum / n;
      const double prev = out.grid[idx];
      if (std::isnan(prev))
        max_change = std::max(max_change, 1.0);
      else
        max_change = std::max(max_change, std::abs(next - prev));
      out.grid[idx] = next;
    }
    if (all_filled && max_change < tol) break;
  }
  return out;
}

ElevationMap restore(const ElevationMap& map, double filter_threshold) {
  return inpaint(filter_outliers(map, filter_threshold));
}

}  // namespace clamber::percep
