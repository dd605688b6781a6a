#pragma once

#include "clamber/common/rng.hpp"
#include "clamber/percep/elevation_map.hpp"

namespace clamber::percep {

/// Training-time corruption ranges. The per-cell noise is bounded-support
/// (uniform by default, truncated normal by flag); drift re-samples the
/// terrain at a shifted origin while the map keeps claiming the true one;
/// outlier clusters appear with `outlier_fraction` probability per map.
struct ArtifactConfig {
  double noise_range = 0.15;  // m, per-cell, symmetric
  bool truncated_normal_noise = false;
  double drift_xy = 0.05;      // m, |dx| and |dy| bound
  double drift_z_min = -0.10;  // m
  double drift_z_max = 0.05;
  double outlier_fraction = 0.20;  // per-map cluster probability
  int outlier_clusters_min = 1;
  int outlier_clusters_max = 4;
  int outlier_cluster_size_min = 2;  // cells per side
  int outlier_cluster_size_max = 4;
  double outlier_magnitude_min = 0.30;  // m, added on top of the cell
  double outlier_magnitude_max = 1.00;
};

/// Corrupt a freshly sampled map: (i) per-cell bounded noise, (ii) spatial
/// drift (content re-sampled from `terrain` at origin + (dx, dy), heights
/// shifted by dz), (iii) with probability `outlier_fraction`, contiguous
/// spike clusters. Deterministic for a fixed rng state.
ElevationMap inject_artifacts(const ElevationMap& map, const sim::Terrain& terrain,
                              const ArtifactConfig& cfg, Rng& rng);

}  // namespace clamber::percep
