#include "gds/downsample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "gds/error.hpp"

namespace gds {

Partition::Partition(Index n, std::vector<Index> kept, std::vector<Index> purged)
    : n_(n), kept_(std::move(kept)), purged_(std::move(purged)) {
  if (n_ < 1) throw Error(ErrorCode::InvalidSize, "partition of an empty vertex set");
  if (static_cast<Index>(purged_.size()) != n_ / 2 ||
      static_cast<Index>(kept_.size()) != n_ - n_ / 2) {
    throw Error(ErrorCode::DimensionError,
                "partition must purge exactly floor(n/2) = " + std::to_string(n_ / 2) + " vertices");
  }
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  for (const auto* list : {&kept_, &purged_}) {
    for (Index v : *list) {
      if (v < 0 || v >= n_) {
        throw Error(ErrorCode::DimensionError, "vertex " + std::to_string(v) + " out of range");
      }
      if (seen[static_cast<std::size_t>(v)]++) {
        throw Error(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " listed twice");
      }
    }
  }
}

namespace {

std::vector<Index> complement(Index n, const std::vector<Index>& chosen) {
  std::vector<char> mark(static_cast<std::size_t>(n), 0);
  for (Index v : chosen) {
    if (v < 0 || v >= n) throw Error(ErrorCode::DimensionError, "vertex " + std::to_string(v) + " out of range");
    mark[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<Index> rest;
  for (Index v = 0; v < n; ++v) {
    if (!mark[static_cast<std::size_t>(v)]) rest.push_back(v);
  }
  return rest;
}

CMatrix select_columns(const CMatrix& rows, std::span<const Index> cols) {
  CMatrix out(rows.rows(), static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Index>(c)) = rows.col(cols[c]);
  return out;
}

}  // namespace

Partition Partition::from_kept(Index n, std::vector<Index> kept) {
  auto purged = complement(n, kept);
  return Partition(n, std::move(kept), std::move(purged));
}

Partition Partition::from_purged(Index n, std::vector<Index> purged) {
  auto kept = complement(n, purged);
  return Partition(n, std::move(kept), std::move(purged));
}

std::vector<Index> Partition::kept_sorted() const {
  auto v = kept_;
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Index> Partition::purged_sorted() const {
  auto v = purged_;
  std::sort(v.begin(), v.end());
  return v;
}

bool Partition::same_split(const Partition& other) const {
  return n_ == other.n_ && kept_sorted() == other.kept_sorted();
}

Vector singular_values_ascending(const CMatrix& m) {
  if (m.size() == 0) return Vector();
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues().reverse();
}

double sdqm(const SpectralBasis& basis, std::span<const Index> purged) {
  if (static_cast<Index>(purged.size()) != basis.high_size()) {
    throw Error(ErrorCode::DimensionError, "purge set must hold floor(n/2) vertices");
  }
  const CMatrix high = basis.high_rows();
  const Vector s = singular_values_ascending(select_columns(high, purged));
  return s.size() ? s(0) : 0.0;
}

DownsampleOperator blocks(const SpectralBasis& basis, const Partition& partition) {
  if (partition.size() != basis.size()) {
    throw Error(ErrorCode::DimensionError, "partition size does not match the basis");
  }
  if (basis.size() < 2) throw Error(ErrorCode::InvalidSize, "downsampling needs n >= 2");
  const CMatrix low = basis.low_rows();
  const CMatrix high = basis.high_rows();

  DownsampleOperator op(partition);
  op.f1_ = select_columns(low, partition.kept());
  op.f2_ = select_columns(low, partition.purged());
  op.f3_ = select_columns(high, partition.kept());
  op.f4_ = select_columns(high, partition.purged());

  const Vector s = singular_values_ascending(op.f4_);
  op.sdqm_ = s(0);
  op.sigma_max_ = s(s.size() - 1);
  if (op.sdqm_ > kInvertibilityThreshold * op.sigma_max_) {
    const Eigen::PartialPivLU<CMatrix> lu(op.f4_);
    CMatrix map = -lu.solve(op.f3_);
    op.kept_gft_ = op.f1_ + op.f2_ * map;
    op.reconstruction_map_ = std::move(map);
  }
  return op;
}

bool is_perfectly_reconstructible(const DownsampleOperator& op) {
  return op.sdqm() > kInvertibilityThreshold * op.sigma_max();
}

namespace {

const CMatrix& require_map(const DownsampleOperator& op) {
  if (!op.reconstruction_map()) {
    throw Error(ErrorCode::NotReconstructible, "F4 is singular for this partition (sdqm " +
                                                   std::to_string(op.sdqm()) + ")");
  }
  return *op.reconstruction_map();
}

}  // namespace

CVector reconstruct(const DownsampleOperator& op, const CVector& x_kept) {
  const CMatrix& map = require_map(op);
  if (x_kept.size() != map.cols()) {
    throw Error(ErrorCode::DimensionError, "expected " + std::to_string(map.cols()) +
                                               " kept samples, got " + std::to_string(x_kept.size()));
  }
  return map * x_kept;
}

GraphSignal assemble(const Partition& partition, const CVector& x_kept, const CVector& x_purged) {
  if (x_kept.size() != static_cast<Index>(partition.kept().size()) ||
      x_purged.size() != static_cast<Index>(partition.purged().size())) {
    throw Error(ErrorCode::DimensionError, "sample counts do not match the partition");
  }
  GraphSignal x(partition.size());
  for (std::size_t k = 0; k < partition.kept().size(); ++k) {
    x(partition.kept()[k]) = x_kept(static_cast<Index>(k));
  }
  for (std::size_t k = 0; k < partition.purged().size(); ++k) {
    x(partition.purged()[k]) = x_purged(static_cast<Index>(k));
  }
  return x;
}

GraphSignal reconstruct_signal(const DownsampleOperator& op, const CVector& x_kept) {
  return assemble(op.partition(), x_kept, reconstruct(op, x_kept));
}

CMatrix reconstruction_operator(const DownsampleOperator& op) {
  const CMatrix& map = require_map(op);
  const Partition& p = op.partition();
  CMatrix r = CMatrix::Zero(p.size(), static_cast<Index>(p.kept().size()));
  for (std::size_t k = 0; k < p.kept().size(); ++k) r(p.kept()[k], static_cast<Index>(k)) = 1.0;
  for (std::size_t k = 0; k < p.purged().size(); ++k) {
    r.row(p.purged()[k]) = map.row(static_cast<Index>(k));
  }
  return r;
}

CVector restrict_to_kept(const Partition& partition, const CVector& x) {
  if (x.size() != partition.size()) {
    throw Error(ErrorCode::DimensionError, "signal length does not match the partition");
  }
  CVector out(static_cast<Index>(partition.kept().size()));
  for (std::size_t k = 0; k < partition.kept().size(); ++k) {
    out(static_cast<Index>(k)) = x(partition.kept()[k]);
  }
  return out;
}

CMatrix downsampled_gft(const DownsampleOperator& op) {
  require_map(op);
  return *op.kept_gft();
}

double error_bound(double eps, double sdqm) {
  if (!(sdqm > 0.0)) throw Error(ErrorCode::NotReconstructible, "sdqm must be positive");
  if (!(eps >= 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be non-negative");
  return eps / sdqm;
}

namespace {

constexpr double kScoreTolerance = 1e-10;

// +1 if a ranks above b, -1 below, 0 tie.
int compare_scores(const Vector& a, const Vector& b) {
  for (Index k = 0; k < std::min(a.size(), b.size()); ++k) {
    const double tol = kScoreTolerance * std::max({1.0, std::abs(a(k)), std::abs(b(k))});
    if (a(k) > b(k) + tol) return 1;
    if (a(k) < b(k) - tol) return -1;
  }
  return 0;
}

}  // namespace

Index select_next_purged(const CMatrix& high_rows, std::span<const Index> purged,
                         std::span<const Index> candidates, unsigned jobs) {
  if (candidates.empty()) throw Error(ErrorCode::InvalidArgument, "no candidate vertices");
  std::vector<Index> order(candidates.begin(), candidates.end());
  std::sort(order.begin(), order.end());

  const CMatrix base = select_columns(high_rows, purged);
  std::vector<Vector> scores(order.size());
  auto score_range = [&](std::size_t begin, std::size_t end) {
    CMatrix trial(high_rows.rows(), base.cols() + 1);
    trial.leftCols(base.cols()) = base;
    for (std::size_t c = begin; c < end; ++c) {
      trial.col(base.cols()) = high_rows.col(order[c]);
      scores[c] = singular_values_ascending(trial);
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, order.size());
  if (workers == 1) {
    score_range(0, order.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (order.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(order.size(), begin + chunk);
      if (begin < end) pool.emplace_back(score_range, begin, end);
    }
  }

  // Sequential reduction in index order keeps the choice independent of jobs.
  std::size_t best = 0;
  for (std::size_t c = 1; c < order.size(); ++c) {
    if (compare_scores(scores[c], scores[best]) >= 0) best = c;
  }
  return order[best];
}

DownsampleResult greedy_downsample(const SpectralBasis& basis, GreedyOptions options) {
  const Index n = basis.size();
  if (n < 2) throw Error(ErrorCode::InvalidSize, "greedy downsampling needs n >= 2");
  const CMatrix high = basis.high_rows();
  std::vector<Index> purged;
  std::vector<Index> remaining(static_cast<std::size_t>(n));
  std::iota(remaining.begin(), remaining.end(), Index{0});
  while (static_cast<Index>(purged.size()) < basis.high_size()) {
    const Index next = select_next_purged(high, purged, remaining, options.jobs);
    purged.push_back(next);
    std::erase(remaining, next);
  }
  Partition partition(n, remaining, purged);
  auto op = blocks(basis, partition);
  return {std::move(partition), std::move(op)};
}

ExhaustiveResult exhaustive_downsample(const SpectralBasis& basis, Index max_n) {
  const Index n = basis.size();
  if (n > max_n) {
    throw Error(ErrorCode::TooLarge, "exhaustive search limited to n <= " + std::to_string(max_n));
  }
  if (n < 2) throw Error(ErrorCode::InvalidSize, "exhaustive downsampling needs n >= 2");
  const Index h = basis.high_size();
  const CMatrix high = basis.high_rows();

  std::vector<ScoredPartition> table;
  std::vector<Index> purged(static_cast<std::size_t>(h));
  std::iota(purged.begin(), purged.end(), Index{0});
  std::size_t best = 0;
  while (true) {
    const Vector s = singular_values_ascending(select_columns(high, purged));
    table.push_back({Partition::from_purged(n, purged), s(0)});
    if (table.back().sdqm > table[best].sdqm) best = table.size() - 1;
    // Next combination in lexicographic order.
    Index k = h - 1;
    while (k >= 0 && purged[static_cast<std::size_t>(k)] == n - h + k) --k;
    if (k < 0) break;
    ++purged[static_cast<std::size_t>(k)];
    for (Index j = k + 1; j < h; ++j) {
      purged[static_cast<std::size_t>(j)] = purged[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  Partition winner = table[best].partition;
  auto op = blocks(basis, winner);
  return {std::move(winner), std::move(op), std::move(table)};
}

double reconstruction_accuracy(const CVector& x, const CVector& e_r) {
  if (x.size() != e_r.size()) throw Error(ErrorCode::DimensionError, "signal and error lengths differ");
  const double err = e_r.norm();
  if (err == 0.0) return kPerfectReconstruction;
  return 20.0 * std::log10(x.norm() / err);
}

}  // namespace gds
