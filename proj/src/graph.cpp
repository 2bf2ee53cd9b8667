#include "gds/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gds/error.hpp"
#include "gds/rng.hpp"

namespace gds {

Graph::Graph(Matrix weights, bool directed, std::vector<std::string> labels)
    : weights_(std::move(weights)), directed_(directed), labels_(std::move(labels)) {
  if (weights_.rows() != weights_.cols()) {
    throw Error(ErrorCode::DimensionError, "weight matrix must be square");
  }
  if (weights_.rows() == 0) {
    throw Error(ErrorCode::InvalidSize, "graph must have at least one vertex");
  }
  if (!weights_.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "weight matrix has non-finite entries");
  }
  if (!directed_ && !symmetric()) {
    throw Error(ErrorCode::InvalidArgument, "undirected graph needs a symmetric weight matrix");
  }
  if (!labels_.empty() && static_cast<Index>(labels_.size()) != size()) {
    throw Error(ErrorCode::DimensionError, "label count does not match vertex count");
  }
}

bool Graph::symmetric() const noexcept { return weights_ == weights_.transpose(); }

SpatialTable::SpatialTable(std::vector<SpatialRecord> rows) : rows_(std::move(rows)) {
  if (rows_.size() < 2) {
    throw Error(ErrorCode::InvalidSize, "spatial table needs at least two vertices");
  }
  const auto k = rows_.front().samples.size();
  for (const auto& r : rows_) {
    if (r.samples.size() != k) {
      throw Error(ErrorCode::DimensionError, "sample vectors differ in length");
    }
    if (!std::isfinite(r.x) || !std::isfinite(r.y)) {
      throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
    }
  }
}

Index SpatialTable::sample_count() const noexcept {
  return static_cast<Index>(rows_.front().samples.size());
}

Matrix SpatialTable::sample_matrix() const {
  Matrix m(size(), sample_count());
  for (Index i = 0; i < size(); ++i) {
    for (Index t = 0; t < sample_count(); ++t) m(i, t) = rows_[i].samples[t];
  }
  return m;
}

const char* to_string(WeightModel model) noexcept {
  return model == WeightModel::Uniform01 ? "uniform01" : "gaussian01";
}

WeightModel parse_weight_model(const std::string& text) {
  if (text == "uniform01" || text == "uniform") return WeightModel::Uniform01;
  if (text == "gaussian01" || text == "gaussian") return WeightModel::Gaussian01;
  throw Error(ErrorCode::InvalidArgument, "unknown weight model '" + text + "'");
}

namespace {

void require_size(Index n, Index minimum, const char* what) {
  if (n < minimum) {
    throw Error(ErrorCode::InvalidSize,
                std::string(what) + " needs n >= " + std::to_string(minimum));
  }
}

}  // namespace

Graph generate_directed_cycle(Index n) {
  require_size(n, 2, "directed cycle");
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) w((i + 1) % n, i) = 1.0;
  return Graph(std::move(w), true);
}

Graph generate_undirected_cycle(Index n) {
  require_size(n, 3, "undirected cycle");
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    w((i + 1) % n, i) = 1.0;
    w(i, (i + 1) % n) = 1.0;
  }
  return Graph(std::move(w), false);
}

Graph generate_dct_path(Index n) {
  require_size(n, 2, "DCT path");
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) {
    w(i, i + 1) = 1.0;
    w(i + 1, i) = 1.0;
  }
  w(0, 0) = 1.0;
  w(n - 1, n - 1) = 1.0;
  return Graph(std::move(w), false);
}

Graph generate_wheel(Index n) {
  require_size(n, 4, "wheel");
  Matrix w = Matrix::Zero(n, n);
  const Index rim = n - 1;
  for (Index k = 0; k < rim; ++k) {
    const Index a = 1 + k;
    const Index b = 1 + (k + 1) % rim;
    w(0, a) = w(a, 0) = 1.0;
    w(a, b) = w(b, a) = 1.0;
  }
  return Graph(std::move(w), false);
}

Graph generate_random(Index n, double density, WeightModel model, bool undirected,
                      std::uint64_t seed) {
  require_size(n, 2, "random graph");
  if (!(density >= 0.0 && density <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "density must lie in [0, 1]");
  }
  Rng rng(seed);
  auto draw = [&] {
    return model == WeightModel::Uniform01 ? rng.uniform() : rng.gaussian();
  };
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = undirected ? i + 1 : 0; j < n; ++j) {
      if (i == j) continue;
      // Both draws are consumed for every pair so the edge pattern of a seed
      // does not depend on the weight model.
      const double keep = rng.uniform();
      const double value = draw();
      if (keep < density) {
        w(i, j) = value;
        if (undirected) w(j, i) = value;
      }
    }
  }
  return Graph(std::move(w), !undirected);
}

Graph generate_bipartite(const Matrix& block) {
  if (block.size() == 0) throw Error(ErrorCode::InvalidSize, "empty bipartite block");
  if (!block.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite block entry");
  const Index p = block.rows();
  const Index q = block.cols();
  Matrix w = Matrix::Zero(p + q, p + q);
  w.topRightCorner(p, q) = block;
  w.bottomLeftCorner(q, p) = block.transpose();
  return Graph(std::move(w), false);
}

Graph generate_bipartite(Index p, Index q, std::uint64_t seed) {
  require_size(p, 1, "bipartite side p");
  require_size(q, 1, "bipartite side q");
  Rng rng(seed);
  Matrix block(p, q);
  for (Index i = 0; i < p; ++i) {
    for (Index j = 0; j < q; ++j) block(i, j) = rng.uniform();
  }
  return generate_bipartite(block);
}

Graph graph_from_correlation(const SpatialTable& table) {
  if (table.sample_count() < 2) {
    throw Error(ErrorCode::InvalidArgument, "correlation needs at least two samples per vertex");
  }
  Matrix x = table.sample_matrix();
  const Index n = x.rows();
  x.colwise() -= x.rowwise().mean();
  Vector scale = x.rowwise().norm();
  for (Index i = 0; i < n; ++i) {
    if (!(scale(i) > 0.0)) {
      throw Error(ErrorCode::DegenerateData,
                  "vertex '" + table.rows()[i].id + "' has a constant sample series");
    }
  }
  x.array().colwise() /= scale.array();
  Matrix corr = x * x.transpose();
  corr = 0.5 * (corr + corr.transpose()).eval();
  corr.diagonal().setZero();

  Eigen::SelfAdjointEigenSolver<Matrix> eig(corr, Eigen::EigenvaluesOnly);
  const double radius = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (!(radius > 0.0)) {
    throw Error(ErrorCode::DegenerateData, "correlation matrix has zero spectrum");
  }
  corr /= radius;
  std::vector<std::string> labels;
  for (const auto& r : table.rows()) labels.push_back(r.id);
  return Graph(std::move(corr), false, std::move(labels));
}

Graph graph_from_coordinates(const SpatialTable& table, Index neighbors) {
  const Index n = table.size();
  if (neighbors < 1 || neighbors + 1 > n) {
    throw Error(ErrorCode::InvalidArgument, "neighbour count must lie in [1, n - 1]");
  }
  Matrix dist = Matrix::Zero(n, n);
  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const auto& a = table.rows()[i];
      const auto& b = table.rows()[j];
      dist(i, j) = dist(j, i) = std::hypot(a.x - b.x, a.y - b.y);
      total += dist(i, j);
    }
  }
  const double mean_dist = total / (static_cast<double>(n) * (n - 1) / 2.0);
  if (!(mean_dist > 0.0)) {
    throw Error(ErrorCode::DegenerateData, "all coordinates coincide");
  }

  Matrix w = Matrix::Zero(n, n);
  std::vector<Index> order;
  for (Index i = 0; i < n; ++i) {
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::erase(order, i);
    // stable_sort keeps lower indices first among equal distances.
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return dist(i, a) < dist(i, b); });
    for (Index k = 0; k < neighbors; ++k) {
      const Index j = order[static_cast<std::size_t>(k)];
      const double ratio = dist(i, j) / mean_dist;
      w(i, j) = std::exp(-ratio * ratio);
    }
    w.row(i) /= w.row(i).norm();
  }
  std::vector<std::string> labels;
  for (const auto& r : table.rows()) labels.push_back(r.id);
  return Graph(std::move(w), true, std::move(labels));
}

Graph kronecker_graph(const Graph& g1, const Graph& g2) {
  const Index n1 = g1.size();
  const Index n2 = g2.size();
  Matrix w(n1 * n2, n1 * n2);
  for (Index i = 0; i < n1; ++i) {
    for (Index j = 0; j < n1; ++j) {
      w.block(i * n2, j * n2, n2, n2) = g1.weight(i, j) * g2.weights();
    }
  }
  return Graph(std::move(w), g1.directed() || g2.directed());
}

}  // namespace gds
