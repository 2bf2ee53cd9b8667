#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "gds/spectral.hpp"

namespace gds {

/// Split of the vertices into kept and purged sets (|purged| = floor(n/2)).
/// The stored order of each list fixes the column order of the blocks.
class Partition {
 public:
  Partition(Index n, std::vector<Index> kept, std::vector<Index> purged);

  /// Purged = ascending complement of `kept`.
  static Partition from_kept(Index n, std::vector<Index> kept);
  /// Kept = ascending complement of `purged`.
  static Partition from_purged(Index n, std::vector<Index> purged);

  Index size() const noexcept { return n_; }
  const std::vector<Index>& kept() const noexcept { return kept_; }
  const std::vector<Index>& purged() const noexcept { return purged_; }

  std::vector<Index> kept_sorted() const;
  std::vector<Index> purged_sorted() const;

  /// Same kept set, ignoring order.
  bool same_split(const Partition& other) const;

 private:
  Index n_;
  std::vector<Index> kept_;
  std::vector<Index> purged_;
};

/// Relative rank threshold: F4 counts as invertible iff
/// sigma_min > kInvertibilityThreshold * sigma_max.
inline constexpr double kInvertibilityThreshold = 1e-10;

/// Accuracy reported when the reconstruction error is exactly zero.
inline constexpr double kPerfectReconstruction = std::numeric_limits<double>::infinity();

/// Blocks of the column-permuted transform
///
///   [ F1 F2 ] [ x_kept   ]   [ b_low  ]
///   [ F3 F4 ] [ x_purged ] = [ b_high ]
///
/// with the quality measure sdqm = sigma_min(F4). When F4 is invertible the
/// operator also carries the purged-vertex predictor -F4^-1 F3 and the Schur
/// complement F1 - F2 F4^-1 F3 (the transform on the kept vertices).
class DownsampleOperator {
 public:
  const Partition& partition() const noexcept { return partition_; }
  const CMatrix& f1() const noexcept { return f1_; }
  const CMatrix& f2() const noexcept { return f2_; }
  const CMatrix& f3() const noexcept { return f3_; }
  const CMatrix& f4() const noexcept { return f4_; }
  double sdqm() const noexcept { return sdqm_; }
  double sigma_max() const noexcept { return sigma_max_; }
  const std::optional<CMatrix>& reconstruction_map() const noexcept { return reconstruction_map_; }
  const std::optional<CMatrix>& kept_gft() const noexcept { return kept_gft_; }

 private:
  friend DownsampleOperator blocks(const SpectralBasis&, const Partition&);
  explicit DownsampleOperator(Partition p) : partition_(std::move(p)) {}

  Partition partition_;
  CMatrix f1_, f2_, f3_, f4_;
  double sdqm_ = 0.0;
  double sigma_max_ = 0.0;
  std::optional<CMatrix> reconstruction_map_;
  std::optional<CMatrix> kept_gft_;
};

DownsampleOperator blocks(const SpectralBasis& basis, const Partition& partition);

/// sigma_min(F4) for the given purged columns, without building the operator.
double sdqm(const SpectralBasis& basis, std::span<const Index> purged);

/// Singular values of m in ascending order.
Vector singular_values_ascending(const CMatrix& m);

bool is_perfectly_reconstructible(const DownsampleOperator& op);

/// Purged-vertex values -F4^-1 F3 x_kept, in the partition's purged order.
CVector reconstruct(const DownsampleOperator& op, const CVector& x_kept);

/// Interleaves kept and purged values back into a full-length signal.
GraphSignal assemble(const Partition& partition, const CVector& x_kept, const CVector& x_purged);

/// Kept values followed by reconstruction, as a full-length signal.
GraphSignal reconstruct_signal(const DownsampleOperator& op, const CVector& x_kept);

/// n x |kept| matrix mapping kept samples to the reconstructed full signal.
CMatrix reconstruction_operator(const DownsampleOperator& op);

/// Values of x on the kept vertices, in partition order.
CVector restrict_to_kept(const Partition& partition, const CVector& x);

/// F_kL = F1 - F2 F4^-1 F3.
CMatrix downsampled_gft(const DownsampleOperator& op);

/// Worst-case reconstruction error eps / sdqm for a high band of norm eps.
double error_bound(double eps, double sdqm);

struct DownsampleResult {
  Partition partition;
  DownsampleOperator op;
};

struct GreedyOptions {
  /// Worker threads for candidate scoring; results do not depend on it.
  unsigned jobs = 1;
};

/// One greedy step: among `candidates`, the vertex whose column, appended to
/// the high-band columns of `purged`, gives the best-conditioned block.
///
/// Candidates are ranked by their ascending singular values compared
/// lexicographically (so sigma_min decides unless it ties within 1e-10); a
/// full tie goes to the higher vertex index.
Index select_next_purged(const CMatrix& high_rows, std::span<const Index> purged,
                         std::span<const Index> candidates, unsigned jobs = 1);

/// Greedy column selection: grows the purged set one vertex at a time until it
/// holds floor(n/2) vertices. The purged list keeps selection order.
DownsampleResult greedy_downsample(const SpectralBasis& basis, GreedyOptions options = {});

struct ScoredPartition {
  Partition partition;
  double sdqm;
};

struct ExhaustiveResult {
  Partition partition;
  DownsampleOperator op;
  /// Every purge set in lexicographic order of its ascending indices.
  std::vector<ScoredPartition> table;
};

/// Scores all C(n, floor(n/2)) purge sets; the first maximum wins.
ExhaustiveResult exhaustive_downsample(const SpectralBasis& basis, Index max_n = 16);

/// 20 log10(||x|| / ||e_r||) in dB; kPerfectReconstruction when e_r = 0.
double reconstruction_accuracy(const CVector& x, const CVector& e_r);

}  // namespace gds
