#include "gds/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <vector>

#include "gds/error.hpp"
#include "gds/graph_io.hpp"
#include "gds/rng.hpp"

namespace gds {

const char* to_string(GftVariant variant) noexcept {
  switch (variant) {
    case GftVariant::Adjacency: return "adjacency";
    case GftVariant::Laplacian: return "laplacian";
    case GftVariant::NormalizedLaplacian: return "normalized_laplacian";
  }
  return "unknown";
}

GftVariant parse_gft_variant(const std::string& text) {
  if (text == "adjacency") return GftVariant::Adjacency;
  if (text == "laplacian") return GftVariant::Laplacian;
  if (text == "normalized_laplacian" || text == "normalized") return GftVariant::NormalizedLaplacian;
  throw Error(ErrorCode::InvalidArgument, "unknown GFT variant '" + text + "'");
}

SpectralBasis::SpectralBasis(GftVariant variant, CMatrix forward, CMatrix inverse,
                             CVector eigenvalues, std::optional<Complex> lambda_max,
                             double basis_condition)
    : variant_(variant),
      forward_(std::move(forward)),
      inverse_(std::move(inverse)),
      eigenvalues_(std::move(eigenvalues)),
      lambda_max_(lambda_max),
      basis_condition_(basis_condition) {
  const Index n = forward_.rows();
  if (forward_.cols() != n || inverse_.rows() != n || inverse_.cols() != n ||
      eigenvalues_.size() != n) {
    throw Error(ErrorCode::DimensionError, "inconsistent spectral basis shapes");
  }
}

double SpectralBasis::frequency_key(Index k) const {
  if (variant_ == GftVariant::Adjacency) return std::abs(1.0 - eigenvalues_(k) / *lambda_max_);
  return eigenvalues_(k).real();
}

namespace {

constexpr double kTieTolerance = 1e-9;

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

// Unit norm, first nonzero entry real positive.
void normalize_columns(CMatrix& v) {
  for (Index c = 0; c < v.cols(); ++c) {
    auto col = v.col(c);
    col /= col.norm();
    for (Index r = 0; r < col.size(); ++r) {
      const double mag = std::abs(col(r));
      if (mag > 1e-10) {
        col *= std::conj(col(r)) / mag;
        col(r) = Complex(col(r).real(), 0.0);
        break;
      }
    }
  }
}

// Ascending keys; ties (within tolerance) by real part descending, then
// imaginary part descending, then original index.
std::vector<Index> frequency_order(const CVector& eigenvalues, const std::vector<double>& keys) {
  const auto n = static_cast<Index>(keys.size());
  std::vector<Index> order(keys.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return keys[a] < keys[b]; });
  auto before = [&](Index a, Index b) {
    const Complex za = eigenvalues(a);
    const Complex zb = eigenvalues(b);
    if (!nearly_equal(za.real(), zb.real())) return za.real() > zb.real();
    if (!nearly_equal(za.imag(), zb.imag())) return za.imag() > zb.imag();
    return a < b;
  };
  Index start = 0;
  while (start < n) {
    Index stop = start + 1;
    while (stop < n && nearly_equal(keys[order[stop]], keys[order[start]])) ++stop;
    // Clusters are tiny (conjugate pairs, repeated eigenvalues); insertion sort
    // tolerates the tolerance-based comparator.
    for (Index i = start + 1; i < stop; ++i) {
      for (Index j = i; j > start && before(order[j], order[j - 1]); --j) {
        std::swap(order[j], order[j - 1]);
      }
    }
    start = stop;
  }
  return order;
}

double condition_number(const CMatrix& v) {
  Eigen::BDCSVD<CMatrix> svd(v);
  const auto& s = svd.singularValues();
  const double smallest = s(s.size() - 1);
  return smallest > 0.0 ? s(0) / smallest : std::numeric_limits<double>::infinity();
}

SpectralBasis assemble(GftVariant variant, const CVector& values, const CMatrix& vectors,
                       const CMatrix& inverse_vectors, std::optional<Complex> lambda_max,
                       double condition) {
  const Index n = values.size();
  std::vector<double> keys(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    keys[k] = variant == GftVariant::Adjacency ? std::abs(1.0 - values(k) / *lambda_max)
                                               : values(k).real();
  }
  const auto order = frequency_order(values, keys);
  CMatrix forward(n, n);
  CMatrix inverse(n, n);
  CVector ordered(n);
  for (Index k = 0; k < n; ++k) {
    forward.row(k) = inverse_vectors.row(order[k]);
    inverse.col(k) = vectors.col(order[k]);
    ordered(k) = values(order[k]);
  }
  return SpectralBasis(variant, std::move(forward), std::move(inverse), std::move(ordered),
                       lambda_max, condition);
}

Complex pick_lambda_max(const CVector& values) {
  Index best = 0;
  for (Index k = 1; k < values.size(); ++k) {
    const Complex z = values(k);
    const Complex b = values(best);
    if (!nearly_equal(std::abs(z), std::abs(b))) {
      if (std::abs(z) > std::abs(b)) best = k;
    } else if (!nearly_equal(z.real(), b.real())) {
      if (z.real() > b.real()) best = k;
    } else if (z.imag() > b.imag() && !nearly_equal(z.imag(), b.imag())) {
      best = k;
    }
  }
  return values(best);
}

SpectralBasis symmetric_basis(GftVariant variant, const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::DefectiveMatrix, "symmetric eigensolver did not converge");
  }
  CMatrix v = eig.eigenvectors().cast<Complex>();
  normalize_columns(v);
  const CVector values = eig.eigenvalues().cast<Complex>();
  std::optional<Complex> lambda_max;
  if (variant == GftVariant::Adjacency) {
    lambda_max = pick_lambda_max(values);
    if (std::abs(*lambda_max) <= 1e-12 * std::max(1.0, m.norm())) {
      throw Error(ErrorCode::DegenerateSpectrum, "all adjacency eigenvalues are zero");
    }
  }
  // Columns stay orthonormal after the sign fix, so V^-1 = V^T exactly.
  const CMatrix vt = v.transpose();
  return assemble(variant, values, v, vt, lambda_max, condition_number(v));
}

SpectralBasis general_basis(const Matrix& a) {
  Eigen::EigenSolver<Matrix> eig(a, true);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::DefectiveMatrix, "eigensolver did not converge");
  }
  const CVector values = eig.eigenvalues();
  const Complex lambda_max = pick_lambda_max(values);
  if (std::abs(lambda_max) <= 1e-12 * std::max(1.0, a.norm())) {
    throw Error(ErrorCode::DegenerateSpectrum, "all adjacency eigenvalues are zero");
  }
  CMatrix v = eig.eigenvectors();
  normalize_columns(v);
  const double condition = condition_number(v);
  if (!(condition <= kMaxBasisCondition)) {
    throw Error(ErrorCode::DefectiveMatrix,
                "adjacency matrix is not diagonalizable within tolerance (eigenvector condition " +
                    std::to_string(condition) + ")");
  }
  const CMatrix vinv = v.partialPivLu().inverse();
  return assemble(GftVariant::Adjacency, values, v, vinv, lambda_max, condition);
}

}  // namespace

SpectralBasis gft(const Graph& graph, GftVariant variant) {
  const Matrix& a = graph.weights();
  if (variant == GftVariant::Adjacency) {
    return graph.symmetric() ? symmetric_basis(variant, a) : general_basis(a);
  }
  if (graph.directed() && !graph.symmetric()) {
    throw Error(ErrorCode::UnsupportedGraph, "Laplacian transforms need an undirected graph");
  }
  const Vector degree = a.rowwise().sum();
  for (Index i = 0; i < degree.size(); ++i) {
    if (degree(i) < 0.0) {
      throw Error(ErrorCode::DegenerateDegree,
                  "vertex " + std::to_string(i) + " has negative degree");
    }
  }
  Matrix lap = -a;
  lap.diagonal() += degree;
  if (variant == GftVariant::NormalizedLaplacian) {
    for (Index i = 0; i < degree.size(); ++i) {
      if (!(degree(i) > 0.0)) {
        throw Error(ErrorCode::DegenerateDegree, "vertex " + std::to_string(i) + " has zero degree");
      }
    }
    const Vector s = degree.cwiseSqrt().cwiseInverse();
    lap = s.asDiagonal() * lap * s.asDiagonal();
    lap = 0.5 * (lap + lap.transpose()).eval();
  }
  return symmetric_basis(variant, lap);
}

Spectrum forward(const SpectralBasis& basis, const GraphSignal& x) {
  if (x.size() != basis.size()) {
    throw Error(ErrorCode::DimensionError, "signal length " + std::to_string(x.size()) +
                                               " does not match graph size " +
                                               std::to_string(basis.size()));
  }
  return Spectrum(basis.forward() * x);
}

GraphSignal inverse(const SpectralBasis& basis, const Spectrum& b) {
  if (b.size() != basis.size()) {
    throw Error(ErrorCode::DimensionError, "spectrum length " + std::to_string(b.size()) +
                                               " does not match graph size " +
                                               std::to_string(basis.size()));
  }
  return basis.inverse() * b.coefficients();
}

Index bandwidth(const Spectrum& b, double tol) {
  if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be non-negative");
  Index n0 = b.size();
  while (n0 > 0 && std::abs(b.coefficients()(n0 - 1)) <= tol) --n0;
  return n0;
}

CVector random_unit_vector(Index n, std::uint64_t seed) {
  Rng rng(seed);
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.gaussian();
  const double norm = v.norm();
  if (norm > 0.0) v /= norm;
  return v;
}

GraphSignal make_lowpass_signal(const SpectralBasis& basis, const CVector& low_profile, double eps,
                                std::uint64_t seed) {
  if (!(eps >= 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be non-negative");
  if (low_profile.size() != basis.low_size()) {
    throw Error(ErrorCode::DimensionError, "low-band profile must have length " +
                                               std::to_string(basis.low_size()));
  }
  CVector b(basis.size());
  b.head(basis.low_size()) = low_profile;
  b.tail(basis.high_size()) = eps * random_unit_vector(basis.high_size(), seed);
  return basis.inverse() * b;
}

void write_basis_csv(std::ostream& out, const SpectralBasis& basis) {
  out << "# variant=" << to_string(basis.variant()) << '\n';
  out << "eigenvalue";
  for (Index j = 0; j < basis.size(); ++j) out << ",v" << j + 1;
  out << '\n';
  for (Index k = 0; k < basis.size(); ++k) {
    out << format_complex(basis.eigenvalues()(k));
    for (Index j = 0; j < basis.size(); ++j) out << ',' << format_complex(basis.forward()(k, j));
    out << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
  out << "index,coefficient\n";
  for (Index k = 0; k < spectrum.size(); ++k) {
    out << k << ',' << format_complex(spectrum.coefficients()(k)) << '\n';
  }
}

}  // namespace gds
