#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gds {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// A graph signal: one (possibly complex) value per vertex.
using GraphSignal = CVector;

/// Weighted graph on n vertices stored as a dense weight matrix.
///
/// Edge convention: weights()(i, j) is the weight of the edge from vertex j to
/// vertex i. An undirected graph has an exactly symmetric weight matrix.
/// Self-loops and negative weights are allowed.
class Graph {
 public:
  Graph(Matrix weights, bool directed, std::vector<std::string> labels = {});

  Index size() const noexcept { return weights_.rows(); }
  const Matrix& weights() const noexcept { return weights_; }
  double weight(Index to, Index from) const { return weights_(to, from); }
  bool directed() const noexcept { return directed_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// True when the weight matrix equals its transpose exactly.
  bool symmetric() const noexcept;

 private:
  Matrix weights_;
  bool directed_;
  std::vector<std::string> labels_;
};

struct SpatialRecord {
  std::string id;
  double x = 0.0;
  double y = 0.0;
  std::vector<double> samples;
};

/// Per-vertex coordinates and observation series (e.g. sensor stations).
class SpatialTable {
 public:
  explicit SpatialTable(std::vector<SpatialRecord> rows);

  Index size() const noexcept { return static_cast<Index>(rows_.size()); }
  Index sample_count() const noexcept;
  const std::vector<SpatialRecord>& rows() const noexcept { return rows_; }

  /// Samples as a vertices x samples matrix.
  Matrix sample_matrix() const;

 private:
  std::vector<SpatialRecord> rows_;
};

enum class WeightModel { Uniform01, Gaussian01 };

const char* to_string(WeightModel model) noexcept;
WeightModel parse_weight_model(const std::string& text);

/// Directed cycle: vertex i feeds vertex (i + 1) mod n with unit weight.
Graph generate_directed_cycle(Index n);

/// Undirected ring (the cycle with both orientations).
Graph generate_undirected_cycle(Index n);

/// Path with unit self-loops on both end vertices; its adjacency matrix is
/// diagonalized by the DCT-II.
Graph generate_dct_path(Index n);

/// Hub vertex 0 joined to every vertex of an (n-1)-cycle 1..n-1, unit weights.
Graph generate_wheel(Index n);

/// Random graph: every off-diagonal entry is kept independently with
/// probability `density` and given a weight drawn from `model`. Undirected
/// graphs mirror the upper triangle.
Graph generate_random(Index n, double density, WeightModel model, bool undirected,
                      std::uint64_t seed);

/// Bipartite graph with weight matrix [[0, B], [B^T, 0]].
Graph generate_bipartite(const Matrix& block);

/// Bipartite graph with a p x q block of U(0, 1) weights.
Graph generate_bipartite(Index p, Index q, std::uint64_t seed);

/// Pearson correlation of the sample series with zero diagonal, scaled so the
/// spectral radius is 1. Undirected; weights may be negative.
Graph graph_from_correlation(const SpatialTable& table);

/// Gaussian-kernel k-nearest-neighbour graph over the coordinates, each row
/// scaled to unit Euclidean norm. Directed.
Graph graph_from_coordinates(const SpatialTable& table, Index neighbors);

/// Graph whose weight matrix is the Kronecker product of the factors'.
Graph kronecker_graph(const Graph& g1, const Graph& g2);

}  // namespace gds
