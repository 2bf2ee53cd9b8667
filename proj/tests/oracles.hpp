#pragma once

// Reference computations for the tests. Everything here is written
// independently of the library's code paths: closed forms, direct loops, and
// the Gram-matrix route to singular values instead of an SVD.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Eigen::Index;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

/// Orthonormal DCT-II matrix: row k, column j = c_k cos(pi k (2j + 1) / 2n).
inline Matrix dct2(Index n) {
  Matrix c(n, n);
  for (Index k = 0; k < n; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (Index j = 0; j < n; ++j) {
      c(k, j) = scale * std::cos(std::numbers::pi * k * (2 * j + 1) / (2.0 * n));
    }
  }
  return c;
}

/// Eigenvalues of the n-vertex directed cycle (the cyclic shift): the n-th
/// roots of unity.
inline std::vector<std::complex<double>> cycle_eigenvalues(Index n) {
  std::vector<std::complex<double>> out;
  for (Index k = 0; k < n; ++k) out.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / n));
  return out;
}

/// Pearson correlation by the textbook formula.
inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

/// Kronecker product by four nested loops.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Smallest singular value as sqrt of the smallest eigenvalue of M^H M.
inline double sigma_min_gram(const CMatrix& m) {
  const CMatrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues()(0)));
}

/// sdqm of every purge set, by bitmask enumeration and the Gram route. Keys
/// are kept sets (0-based).
inline std::map<std::set<Index>, double> all_sdqm(const CMatrix& high_rows) {
  const Index n = high_rows.cols();
  const Index h = high_rows.rows();
  std::map<std::set<Index>, double> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<Index>(__builtin_popcount(mask)) != h) continue;
    CMatrix f4(h, h);
    std::set<Index> kept;
    Index c = 0;
    for (Index v = 0; v < n; ++v) {
      if (mask & (1u << v)) f4.col(c++) = high_rows.col(v);
      else kept.insert(v);
    }
    out[kept] = sigma_min_gram(f4);
  }
  return out;
}

/// The 6-vertex hub-and-rim example graph from its edge list (1-based
/// endpoints). With `perturb`, five edges take the weight `raised`.
inline Matrix example_graph_weights(double raised = 1.0, bool perturb = false) {
  const std::vector<std::pair<int, int>> edges = {{1, 2}, {1, 4}, {1, 6}, {1, 3}, {1, 5},
                                                  {2, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 6}};
  const std::set<std::pair<int, int>> raised_edges = {{1, 3}, {1, 4}, {1, 5}, {2, 3}, {5, 6}};
  Matrix w = Matrix::Zero(6, 6);
  for (auto [a, b] : edges) {
    const double value = perturb && raised_edges.contains({a, b}) ? raised : 1.0;
    w(a - 1, b - 1) = w(b - 1, a - 1) = value;
  }
  return w;
}

/// Truncation to `digits` decimals.
inline double truncate(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::floor(x * scale + 1e-9) / scale;
}

}  // namespace oracle
