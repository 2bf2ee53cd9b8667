#pragma once

#include "gds/downsample.hpp"
#include "gds/graph.hpp"
#include "gds/spectral.hpp"

namespace gds {

struct CutReport {
  double cut_weight = 0.0;
  double total_weight = 0.0;
  double cut_index = 0.0;
};

/// Weight crossing the partition over total edge weight. Each unordered vertex
/// pair is counted once; for directed graphs both orientations are summed.
/// Self-loops never cross and are left out of both sums.
CutReport cut_index(const Graph& graph, const Partition& partition);

/// Maximum-spanning-tree baseline.
///
/// Kruskal on descending signed weight (ties by lower, then higher endpoint),
/// giving a spanning forest for disconnected graphs. Each tree is 2-coloured;
/// the colour class holding vertex 0 (and, in other components, the root's
/// class) is kept, and the classes are balanced to floor(n/2) purged vertices by
/// moving the lowest tree-degree vertices across (ties by lower index).
Partition mst_downsample(const Graph& graph);

struct PolarityResult {
  Partition partition;
  /// The highest-frequency eigenvector was complex; polarity was read from its
  /// real parts.
  bool real_part_fallback = false;
};

/// Highest-frequency-eigenvector polarity baseline.
///
/// Vertices with positive entries form one class, the rest the other; the
/// class holding the largest-magnitude entry is kept. Balancing moves the
/// smallest-magnitude entries across (ties by lower index).
PolarityResult polarity_downsample(const SpectralBasis& basis);

}  // namespace gds
