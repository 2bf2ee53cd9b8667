#include <algorithm>

#include "doctest.h"
#include "gds/baselines.hpp"
#include "gds/error.hpp"
#include "gds/rng.hpp"
#include "oracles.hpp"

using namespace gds;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected gds::Error");
  return ErrorCode::InvalidArgument;
}

Partition kept_one_based(Index n, std::vector<Index> kept) {
  for (auto& v : kept) --v;
  return Partition::from_kept(n, kept);
}

Graph path_graph(Index n) {
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) w(i, i + 1) = w(i + 1, i) = 1.0;
  return Graph(w, false);
}

Graph two_triangles() {
  Matrix w = Matrix::Zero(6, 6);
  for (Index base : {0, 3}) {
    for (Index a = 0; a < 3; ++a)
      for (Index b = 0; b < 3; ++b)
        if (a != b) w(base + a, base + b) = 1.0;
  }
  return Graph(w, false);
}

}  // namespace

TEST_CASE("cut index") {
  const Graph example(oracle::example_graph_weights(), false);
  SUBCASE("hub-and-rim example") {
    const CutReport a = cut_index(example, kept_one_based(6, {1, 4, 6}));
    CHECK(a.cut_weight == 7.0);
    CHECK(a.total_weight == 10.0);
    CHECK(a.cut_index == doctest::Approx(0.7));
    CHECK(cut_index(example, kept_one_based(6, {2, 3, 4})).cut_index == doctest::Approx(0.5));
  }
  SUBCASE("components split cleanly") {
    CHECK(cut_index(two_triangles(), Partition::from_kept(6, {0, 1, 2})).cut_index == 0.0);
  }
  SUBCASE("directed graphs sum both orientations; self-loops ignored") {
    Matrix w = Matrix::Zero(3, 3);
    w(1, 0) = 2.0;
    w(0, 1) = 3.0;
    w(2, 1) = 1.0;
    w(0, 0) = 100.0;
    const Graph g(w, true);
    CHECK(cut_index(g, Partition::from_purged(3, {1})).cut_index == doctest::Approx(1.0));
    const CutReport r = cut_index(g, Partition::from_purged(3, {2}));
    CHECK(r.cut_weight == 1.0);
    CHECK(r.total_weight == 6.0);
  }
  SUBCASE("symmetric in the classes and invariant to scaling") {
    const Graph g = generate_random(10, 0.5, WeightModel::Uniform01, true, 6);
    const Partition p = Partition::from_kept(10, {0, 3, 4, 7, 9});
    const Partition swapped(10, p.purged(), p.kept());
    const double c = cut_index(g, p).cut_index;
    CHECK(cut_index(g, swapped).cut_index == doctest::Approx(c));
    CHECK(cut_index(Graph(3.7 * g.weights(), false), p).cut_index == doctest::Approx(c));
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
  CHECK(code_of([] { cut_index(Graph(Matrix::Zero(4, 4), false), Partition::from_kept(4, {0, 1})); }) ==
        ErrorCode::DegenerateGraph);
  CHECK(code_of([&] { cut_index(example, Partition::from_kept(4, {0, 1})); }) == ErrorCode::DimensionError);
}

TEST_CASE("maximum spanning tree baseline") {
  SUBCASE("perturbed hub-and-rim example") {
    const Partition p = mst_downsample(Graph(oracle::example_graph_weights(1.01, true), false));
    CHECK(p.kept_sorted() == std::vector<Index>{0, 1, 5});
    CHECK(p.purged_sorted() == std::vector<Index>{2, 3, 4});
  }
  SUBCASE("path gives the alternating split") {
    CHECK(mst_downsample(path_graph(6)).kept_sorted() == std::vector<Index>{0, 2, 4});
    CHECK(mst_downsample(path_graph(7)).kept_sorted() == std::vector<Index>{0, 2, 4, 6});
  }
  SUBCASE("a tree is its own spanning tree") {
    int balanced = 0;
    for (std::uint64_t s = 0; s < 30; ++s) {
      const Index n = 8;
      Rng rng(s);
      Matrix w = Matrix::Zero(n, n);
      std::vector<int> depth(n, 0);
      for (Index v = 1; v < n; ++v) {
        const Index parent = static_cast<Index>(rng.uniform() * static_cast<double>(v));
        w(v, parent) = w(parent, v) = 0.5 + rng.uniform();
        depth[v] = depth[parent] + 1;
      }
      std::vector<Index> even;
      for (Index v = 0; v < n; ++v)
        if (depth[v] % 2 == 0) even.push_back(v);
      if (static_cast<Index>(even.size()) != n - n / 2) continue;
      ++balanced;
      CHECK(mst_downsample(Graph(w, false)).kept_sorted() == even);
    }
    CHECK(balanced > 3);
  }
  SUBCASE("star needs balancing") {
    Matrix w = Matrix::Zero(5, 5);
    for (Index v = 1; v < 5; ++v) w(0, v) = w(v, 0) = 1.0;
    CHECK(mst_downsample(Graph(w, false)).kept_sorted() == std::vector<Index>{0, 1, 2});
  }
  SUBCASE("always a valid partition") {
    std::vector<Graph> graphs = {two_triangles(), Graph(Matrix::Zero(5, 5), false), path_graph(2),
                                 generate_random(15, 0.2, WeightModel::Gaussian01, true, 1),
                                 generate_random(9, 0.05, WeightModel::Uniform01, true, 2),
                                 generate_bipartite(3, 4, 3)};
    for (const auto& g : graphs) {
      const Partition p = mst_downsample(g);
      CHECK(static_cast<Index>(p.purged().size()) == g.size() / 2);
    }
  }
  SUBCASE("deterministic") {
    const Graph g = generate_random(20, 0.3, WeightModel::Gaussian01, true, 9);
    CHECK(mst_downsample(g).kept() == mst_downsample(g).kept());
  }
  CHECK(code_of([] { mst_downsample(generate_directed_cycle(5)); }) == ErrorCode::UnsupportedGraph);
}

TEST_CASE("polarity baseline") {
  SUBCASE("path laplacian alternates") {
    const PolarityResult r = polarity_downsample(gft(path_graph(4), GftVariant::Laplacian));
    const auto kept = r.partition.kept_sorted();
    CHECK((kept == std::vector<Index>{0, 2} || kept == std::vector<Index>{1, 3}));
    CHECK_FALSE(r.real_part_fallback);
  }
  SUBCASE("bipartite graphs split along the bipartition") {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto kept = polarity_downsample(gft(generate_bipartite(4, 4, s))).partition.kept_sorted();
      CHECK((kept == std::vector<Index>{0, 1, 2, 3} || kept == std::vector<Index>{4, 5, 6, 7}));
    }
  }
  SUBCASE("constant highest eigenvector") {
    Matrix w(3, 3);
    w << -1, 1, 1, 1, -1, 1, 1, 1, -1;
    const SpectralBasis b = gft(Graph(w, false));
    REQUIRE(b.inverse().col(2).cwiseAbs().isApproxToConstant(1.0 / std::sqrt(3.0), 1e-12));
    const PolarityResult r = polarity_downsample(b);
    CHECK(r.partition.purged() == std::vector<Index>{0});
    CHECK(polarity_downsample(b).partition.kept() == r.partition.kept());
  }
  SUBCASE("complex eigenvector falls back to real parts") {
    const PolarityResult r = polarity_downsample(gft(generate_directed_cycle(5)));
    CHECK(r.real_part_fallback);
    CHECK(r.partition.purged().size() == 2);
  }
  SUBCASE("always a valid partition") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Graph g = generate_random(7 + s, 0.4, WeightModel::Gaussian01, s % 2 == 0, s);
      const PolarityResult r = polarity_downsample(gft(g));
      CHECK(static_cast<Index>(r.partition.purged().size()) == g.size() / 2);
    }
  }
}
