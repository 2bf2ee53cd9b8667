#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "gds/graph.hpp"

namespace gds {

enum class GftVariant { Adjacency, Laplacian, NormalizedLaplacian };

const char* to_string(GftVariant variant) noexcept;
GftVariant parse_gft_variant(const std::string& text);

/// Bases whose eigenvector matrix has a condition number above this are
/// treated as defective (not diagonalizable).
inline constexpr double kMaxBasisCondition = 1e8;

/// Graph Fourier transform of a graph: rows of forward() are the transform's
/// analysis vectors ordered from low to high frequency, and inverse() holds the
/// matching eigenvectors as columns.
///
/// Row split: the low band is the first n - floor(n/2) frequencies and the high
/// band the last floor(n/2).
class SpectralBasis {
 public:
  SpectralBasis(GftVariant variant, CMatrix forward, CMatrix inverse, CVector eigenvalues,
                std::optional<Complex> lambda_max, double basis_condition);

  GftVariant variant() const noexcept { return variant_; }
  Index size() const noexcept { return forward_.rows(); }
  Index low_size() const noexcept { return size() - size() / 2; }
  Index high_size() const noexcept { return size() / 2; }

  const CMatrix& forward() const noexcept { return forward_; }
  const CMatrix& inverse() const noexcept { return inverse_; }
  const CVector& eigenvalues() const noexcept { return eigenvalues_; }
  const std::optional<Complex>& lambda_max() const noexcept { return lambda_max_; }
  double basis_condition() const noexcept { return basis_condition_; }

  /// Frequency key of eigenvalue k: |1 - lambda/lambda_max| for the adjacency
  /// transform, the (real) eigenvalue otherwise.
  double frequency_key(Index k) const;

  auto low_rows() const { return forward_.topRows(low_size()); }
  auto high_rows() const { return forward_.bottomRows(high_size()); }

 private:
  GftVariant variant_;
  CMatrix forward_;
  CMatrix inverse_;
  CVector eigenvalues_;
  std::optional<Complex> lambda_max_;
  double basis_condition_;
};

/// Spectrum coefficients in frequency order, with low/high band views.
class Spectrum {
 public:
  explicit Spectrum(CVector coefficients) : coefficients_(std::move(coefficients)) {}

  Index size() const noexcept { return coefficients_.size(); }
  const CVector& coefficients() const noexcept { return coefficients_; }
  auto low() const { return coefficients_.head(size() - size() / 2); }
  auto high() const { return coefficients_.tail(size() / 2); }

 private:
  CVector coefficients_;
};

/// Builds the requested transform.
///
/// Adjacency: A = V diag(lambda) V^-1 with F = V^-1, rows ordered by ascending
/// |1 - lambda/lambda_max|, lambda_max being the eigenvalue of largest
/// magnitude. Symmetric weight matrices use the symmetric solver so V is
/// orthogonal. Laplacian variants need an undirected graph and order by
/// ascending eigenvalue.
///
/// Every eigenvector is scaled to unit norm with its first nonzero entry made
/// real and positive, so the result is deterministic for a given input.
SpectralBasis gft(const Graph& graph, GftVariant variant = GftVariant::Adjacency);

/// Coefficients F x.
Spectrum forward(const SpectralBasis& basis, const GraphSignal& x);

/// Signal F^-1 b.
GraphSignal inverse(const SpectralBasis& basis, const Spectrum& b);

/// Smallest n0 with |b(i)| <= tol for every i >= n0.
Index bandwidth(const Spectrum& b, double tol = 0.0);

/// Synthesizes a lowpass signal whose low band equals `low_profile` and whose
/// high band is a seeded random direction of norm exactly `eps`.
GraphSignal make_lowpass_signal(const SpectralBasis& basis, const CVector& low_profile, double eps,
                                std::uint64_t seed);

/// Seeded random real unit vector of length n (test and experiment helper).
CVector random_unit_vector(Index n, std::uint64_t seed);

/// CSV export: one line per frequency; `eigenvalue,row...` with complex cells
/// as `re+imj`.
void write_basis_csv(std::ostream& out, const SpectralBasis& basis);
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

}  // namespace gds
