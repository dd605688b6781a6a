#pragma once

#include "clamber/percep/elevation_map.hpp"

namespace clamber::percep {

/// Mark cells deviating more than `threshold` from their 5x5 neighborhood
/// median as missing. Finite values are never modified, only invalidated;
/// coherent structures (platform edges) pass the median test.
ElevationMap filter_outliers(const ElevationMap& map, double threshold = 0.3,
                             int half_window = 2);

/// Fill missing cells by iterative averaging of available 4-neighbors until
/// the largest per-cell change drops below `tol` (or `max_iters`). Known
/// cells are bit-unchanged; filled values obey the discrete maximum
/// principle. Throws std::invalid_argument if every cell is missing.
ElevationMap inpaint(const ElevationMap& map, double tol = 1e-5, int max_iters = 500);

/// Deployment-time restoration: inpaint(filter_outliers(map)).
ElevationMap restore(const ElevationMap& map, double filter_threshold = 0.3);

}  // namespace clamber::percep
