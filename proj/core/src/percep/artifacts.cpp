#include "clamber/percep/artifacts.hpp"

#include <algorithm>
#include <cmath>

namespace clamber::percep {

ElevationMap inject_artifacts(const ElevationMap& map, const sim::Terrain& terrain,
                              const ArtifactConfig& cfg, Rng& rng) {
  // (ii) localization drift: content comes from a shifted origin while the
  // map keeps claiming the true one; dz shifts every height.
  const double dx = rng.uniform(-cfg.drift_xy, cfg.drift_xy);
  rng.uniform(-cfg.drift_xy, cfg.drift_xy);  // dy drawn for stream parity (terrain y-invariant)
  const double dz = rng.uniform(cfg.drift_z_min, cfg.drift_z_max);

  ElevationMap out = sample_elevation(terrain, map.origin_x + dx, map.origin_y);
  out.origin_x = map.origin_x;
  out.origin_y = map.origin_y;
  for (double& v : out.grid) v += dz;

  // (i) bounded per-cell noise
  for (double& v : out.grid) {
    const double n = cfg.truncated_normal_noise
                         ? rng.truncated_gaussian(0.0, cfg.noise_range / 2.0,
                                                  -cfg.noise_range, cfg.noise_range)
                         : rng.uniform(-cfg.noise_range, cfg.noise_range);
    v += n;
  }

  // (iii) spike clusters on a fraction of maps
  if (rng.bernoulli(cfg.outlier_fraction)) {
    const int clusters = rng.uniform_int(cfg.outlier_clusters_min, cfg.outlier_clusters_max);
    for (int c = 0; c < clusters; ++c) {
      const int size = rng.uniform_int(cfg.outlier_cluster_size_min, cfg.outlier_cluster_size_max);
      const int row0 = rng.uniform_int(0, kMapSize - size);
      const int col0 = rng.uniform_int(0, kMapSize - size);
      const double mag = rng.uniform(cfg.outlier_magnitude_min, cfg.outlier_magnitude_max);
      for (int r = row0; r < row0 + size; ++r)
        for (int cc = col0; cc < col0 + size; ++cc) out.at(r, cc) += mag;
    }
  }
  return out;
}

}  // namespace clamber::percep
