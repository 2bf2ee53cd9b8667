#include "gds/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

#include "gds/error.hpp"

namespace gds {

CutReport cut_index(const Graph& graph, const Partition& partition) {
  const Index n = graph.size();
  if (partition.size() != n) throw Error(ErrorCode::DimensionError, "partition size does not match graph");
  std::vector<char> in_kept(static_cast<std::size_t>(n), 0);
  for (Index v : partition.kept()) in_kept[static_cast<std::size_t>(v)] = 1;

  CutReport report;
  const auto& w = graph.weights();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double pair = graph.directed() ? w(i, j) + w(j, i) : w(i, j);
      report.total_weight += pair;
      if (in_kept[static_cast<std::size_t>(i)] != in_kept[static_cast<std::size_t>(j)]) {
        report.cut_weight += pair;
      }
    }
  }
  if (report.total_weight == 0.0) {
    throw Error(ErrorCode::DegenerateGraph, "graph has zero total edge weight");
  }
  report.cut_index = report.cut_weight / report.total_weight;
  return report;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }
  Index find(Index x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<Index> parent_;
};

// Moves vertices between the two classes until exactly `target` are purged.
// `priority` ranks which vertices move first (lower moves first).
Partition balance(Index n, std::vector<char> purged_mask, const std::vector<double>& priority,
                  Index target) {
  auto count = [&] { return static_cast<Index>(std::count(purged_mask.begin(), purged_mask.end(), 1)); };
  auto move_one = [&](char from) {
    Index pick = -1;
    for (Index v = 0; v < n; ++v) {
      if (purged_mask[v] != from) continue;
      if (pick < 0 || priority[v] < priority[pick]) pick = v;
    }
    purged_mask[pick] = from ? 0 : 1;
  };
  while (count() > target) move_one(1);
  while (count() < target) move_one(0);
  std::vector<Index> purged;
  for (Index v = 0; v < n; ++v) {
    if (purged_mask[v]) purged.push_back(v);
  }
  return Partition::from_purged(n, std::move(purged));
}

}  // namespace

Partition mst_downsample(const Graph& graph) {
  if (!graph.symmetric()) {
    throw Error(ErrorCode::UnsupportedGraph, "spanning-tree baseline needs an undirected graph");
  }
  const Index n = graph.size();
  const auto& w = graph.weights();
  std::vector<std::tuple<double, Index, Index>> edges;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (w(i, j) != 0.0) edges.emplace_back(w(i, j), i, j);
    }
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::tie(std::get<1>(a), std::get<2>(a)) < std::tie(std::get<1>(b), std::get<2>(b));
  });

  DisjointSets sets(n);
  std::vector<std::vector<Index>> tree(static_cast<std::size_t>(n));
  for (const auto& [weight, i, j] : edges) {
    if (sets.unite(i, j)) {
      tree[i].push_back(j);
      tree[j].push_back(i);
    }
  }

  // Colour 0 = kept. Each component's lowest vertex starts in the kept class.
  std::vector<int> colour(static_cast<std::size_t>(n), -1);
  for (Index root = 0; root < n; ++root) {
    if (colour[root] >= 0) continue;
    colour[root] = 0;
    std::vector<Index> stack{root};
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      for (Index v : tree[u]) {
        if (colour[v] < 0) {
          colour[v] = 1 - colour[u];
          stack.push_back(v);
        }
      }
    }
  }

  std::vector<char> purged_mask(static_cast<std::size_t>(n));
  std::vector<double> priority(static_cast<std::size_t>(n));
  for (Index v = 0; v < n; ++v) {
    purged_mask[v] = static_cast<char>(colour[v] == 1);
    // Degree first, index second.
    priority[v] = static_cast<double>(tree[v].size()) * static_cast<double>(n) + static_cast<double>(v);
  }
  return balance(n, std::move(purged_mask), priority, n / 2);
}

PolarityResult polarity_downsample(const SpectralBasis& basis) {
  const Index n = basis.size();
  if (n < 2) throw Error(ErrorCode::InvalidSize, "polarity baseline needs n >= 2");
  const CVector v = basis.inverse().col(n - 1);
  const bool fallback = v.imag().norm() > 1e-9 * v.norm();
  const Vector re = v.real();
  const Vector mag = v.cwiseAbs();

  Index dominant = 0;
  for (Index i = 1; i < n; ++i) {
    if (mag(i) > mag(dominant) * (1.0 + 1e-12)) dominant = i;
  }
  const bool keep_positive = re(dominant) > 0.0;
  std::vector<char> purged_mask(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) purged_mask[i] = static_cast<char>((re(i) > 0.0) != keep_positive);

  // Smallest magnitude moves first; magnitudes equal to 12 significant digits
  // count as ties and fall back to the vertex index.
  const double peak = mag.maxCoeff() > 0.0 ? mag.maxCoeff() : 1.0;
  std::vector<double> priority(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    priority[i] = std::round(mag(i) / peak * 1e12) * static_cast<double>(n) + static_cast<double>(i);
  }

  return {balance(n, std::move(purged_mask), priority, n / 2), fallback};
}

}  // namespace gds
