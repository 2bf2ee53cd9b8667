#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "gds/error.hpp"
#include "gds/graph_io.hpp"
#include "gds/spectral.hpp"
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

struct Case {
  std::string name;
  Graph graph;
};

std::vector<Case> sample_graphs() {
  std::vector<Case> out;
  out.push_back({"directed cycle 6", generate_directed_cycle(6)});
  out.push_back({"directed cycle 9", generate_directed_cycle(9)});
  out.push_back({"undirected cycle 7", generate_undirected_cycle(7)});
  out.push_back({"dct 16", generate_dct_path(16)});
  out.push_back({"wheel 6", generate_wheel(6)});
  out.push_back({"bipartite 4+4", generate_bipartite(4, 4, 3)});
  out.push_back({"random undirected", generate_random(20, 0.3, WeightModel::Uniform01, true, 21)});
  out.push_back({"random signed", generate_random(20, 0.3, WeightModel::Gaussian01, true, 22)});
  out.push_back({"random directed", generate_random(15, 0.4, WeightModel::Uniform01, false, 23)});
  return out;
}

}  // namespace

TEST_CASE("variant names") {
  CHECK(parse_gft_variant("adjacency") == GftVariant::Adjacency);
  CHECK(parse_gft_variant("laplacian") == GftVariant::Laplacian);
  CHECK(parse_gft_variant("normalized") == GftVariant::NormalizedLaplacian);
  CHECK(std::string(to_string(GftVariant::Laplacian)) == "laplacian");
  CHECK(code_of([] { parse_gft_variant("wavelet"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("directed 6-cycle: roots of unity in frequency order") {
  const SpectralBasis b = gft(generate_directed_cycle(6));
  REQUIRE(b.lambda_max().has_value());
  CHECK(std::abs(*b.lambda_max() - Complex(1.0, 0.0)) < 1e-12);

  std::vector<double> expected_keys;
  for (auto z : oracle::cycle_eigenvalues(6)) expected_keys.push_back(std::abs(1.0 - z));
  std::sort(expected_keys.begin(), expected_keys.end());
  for (Index k = 0; k < 6; ++k) {
    CHECK(b.frequency_key(k) == doctest::Approx(expected_keys[k]).epsilon(1e-12));
    CHECK(std::abs(std::abs(b.eigenvalues()(k)) - 1.0) < 1e-12);
  }
  // Conjugate pairs share a key; the positive imaginary part comes first.
  CHECK(b.eigenvalues()(1).imag() > 0.0);
  CHECK(b.eigenvalues()(2).imag() < 0.0);
  CHECK(b.eigenvalues()(3).imag() > 0.0);
  CHECK(b.eigenvalues()(4).imag() < 0.0);
  CHECK(std::abs(b.eigenvalues()(5) - Complex(-1.0, 0.0)) < 1e-12);
  // Unitary: rows of the DFT have modulus 1/sqrt(6) everywhere.
  CHECK(b.forward().cwiseAbs().isApproxToConstant(1.0 / std::sqrt(6.0), 1e-10));
}

TEST_CASE("DCT path: rows match the DCT-II up to sign") {
  for (Index n : {4, 8, 16}) {
    const SpectralBasis b = gft(generate_dct_path(n));
    const Matrix c = oracle::dct2(n);
    for (Index k = 0; k < n; ++k) {
      const Complex dot = b.forward().row(k).dot(c.row(k).cast<Complex>().transpose());
      CHECK(std::abs(std::abs(dot) - 1.0) < 1e-10);
      CHECK(b.eigenvalues()(k).real() ==
            doctest::Approx(2.0 * std::cos(std::numbers::pi * k / n)).epsilon(1e-12));
      CHECK(b.eigenvalues()(k).imag() == 0.0);
    }
  }
}

TEST_CASE("transform invariants across graphs and variants") {
  for (const auto& c : sample_graphs()) {
    for (GftVariant v : {GftVariant::Adjacency, GftVariant::Laplacian, GftVariant::NormalizedLaplacian}) {
      if (v != GftVariant::Adjacency && !c.graph.symmetric()) continue;
      if (v == GftVariant::NormalizedLaplacian &&
          (c.graph.weights().rowwise().sum().array() <= 0.0).any())
        continue;
      if (v != GftVariant::Adjacency && (c.graph.weights().rowwise().sum().array() < 0.0).any()) continue;
      CAPTURE(c.name);
      CAPTURE(to_string(v));
      const SpectralBasis b = gft(c.graph, v);
      const Index n = b.size();
      CHECK(b.low_size() + b.high_size() == n);
      CHECK(b.high_size() == n / 2);
      const CMatrix id = b.forward() * b.inverse();
      CHECK((id - CMatrix::Identity(n, n)).norm() / std::sqrt(double(n)) < 1e-9);
      for (Index k = 1; k < n; ++k) CHECK(b.frequency_key(k) >= b.frequency_key(k - 1) - 1e-9);
      if (c.graph.symmetric()) {
        CHECK(b.eigenvalues().imag().cwiseAbs().maxCoeff() == 0.0);
        CHECK((b.forward() * b.forward().adjoint() - CMatrix::Identity(n, n)).norm() < 1e-10);
        const CVector x = random_unit_vector(n, 5);
        CHECK(forward(b, x).coefficients().norm() == doctest::Approx(1.0).epsilon(1e-10));
      }
      // A F^-1 = F^-1 diag(lambda) for the matrix that was diagonalized.
      Matrix op = c.graph.weights();
      if (v != GftVariant::Adjacency) {
        const Vector d = op.rowwise().sum();
        op = -op;
        op.diagonal() += d;
        if (v == GftVariant::NormalizedLaplacian) {
          const Vector s = d.cwiseSqrt().cwiseInverse();
          op = s.asDiagonal() * op * s.asDiagonal();
        }
      }
      const CMatrix lhs = op.cast<Complex>() * b.inverse();
      const CMatrix rhs = b.inverse() * b.eigenvalues().asDiagonal();
      CHECK((lhs - rhs).norm() < 1e-9 * std::max(1.0, op.norm()));
      for (Index k = 0; k < n; ++k) {
        CHECK(b.inverse().col(k).norm() == doctest::Approx(1.0).epsilon(1e-12));
      }
      if (v == GftVariant::NormalizedLaplacian) {
        CHECK(b.eigenvalues().real().minCoeff() > -1e-10);
        CHECK(b.eigenvalues().real().maxCoeff() < 2.0 + 1e-10);
      }
    }
  }
}

TEST_CASE("gft is deterministic") {
  const Graph g = generate_random(25, 0.3, WeightModel::Gaussian01, false, 77);
  const SpectralBasis a = gft(g);
  const SpectralBasis b = gft(g);
  CHECK(a.forward() == b.forward());
  CHECK(a.eigenvalues() == b.eigenvalues());
}

TEST_CASE("first nonzero entry of each eigenvector is real and positive") {
  const SpectralBasis b = gft(generate_directed_cycle(5));
  for (Index k = 0; k < 5; ++k) {
    const Complex first = b.inverse()(0, k);
    CHECK(first.real() > 0.0);
    CHECK(std::abs(first.imag()) < 1e-12);
  }
}

TEST_CASE("laplacian of the path starts at zero with the constant vector") {
  const Graph g = generate_undirected_cycle(8);
  const SpectralBasis b = gft(g, GftVariant::Laplacian);
  CHECK(std::abs(b.eigenvalues()(0)) < 1e-12);
  CHECK(b.inverse().col(0).cwiseAbs().isApproxToConstant(1.0 / std::sqrt(8.0), 1e-10));
  CHECK(b.eigenvalues()(7).real() == doctest::Approx(4.0));
}

TEST_CASE("bipartite lambda_max tie goes to the positive eigenvalue") {
  const SpectralBasis b = gft(generate_bipartite(Matrix::Ones(2, 2)));
  CHECK(b.lambda_max()->real() > 0.0);
  CHECK(b.frequency_key(0) == doctest::Approx(0.0));
  CHECK(b.frequency_key(3) == doctest::Approx(2.0));
}

TEST_CASE("gft errors") {
  Matrix d = Matrix::Zero(3, 3);
  d(1, 0) = 1.0;
  d(2, 1) = 1.0;
  const Graph directed(d, true);
  CHECK(code_of([&] { gft(directed, GftVariant::Laplacian); }) == ErrorCode::UnsupportedGraph);
  CHECK(code_of([&] { gft(directed, GftVariant::NormalizedLaplacian); }) == ErrorCode::UnsupportedGraph);

  Matrix iso = Matrix::Zero(3, 3);
  iso(0, 1) = iso(1, 0) = 1.0;
  CHECK(code_of([&] { gft(Graph(iso, false), GftVariant::NormalizedLaplacian); }) ==
        ErrorCode::DegenerateDegree);
  CHECK_NOTHROW(gft(Graph(iso, false), GftVariant::Laplacian));

  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 1) = neg(1, 0) = -1.0;
  CHECK(code_of([&] { gft(Graph(neg, false), GftVariant::Laplacian); }) == ErrorCode::DegenerateDegree);

  CHECK(code_of([] { gft(Graph(Matrix::Zero(4, 4), false)); }) == ErrorCode::DegenerateSpectrum);
  // Nilpotent shift: every eigenvalue is zero.
  CHECK(code_of([&] { gft(directed); }) == ErrorCode::DegenerateSpectrum);

  Matrix jordan(2, 2);
  jordan << 1, 0, 1, 1;
  CHECK(code_of([&] { gft(Graph(jordan, true)); }) == ErrorCode::DefectiveMatrix);
}

TEST_CASE("forward and inverse") {
  const SpectralBasis b = gft(generate_random(12, 0.5, WeightModel::Uniform01, false, 4));
  SUBCASE("zero maps to zero") {
    CHECK(forward(b, CVector::Zero(12)).coefficients().isZero());
  }
  SUBCASE("unit spectrum vector inverts to an eigenvector") {
    CVector e = CVector::Zero(12);
    e(3) = 1.0;
    CHECK((inverse(b, Spectrum(e)) - b.inverse().col(3)).norm() < 1e-14);
  }
  SUBCASE("round trip") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const CVector x = random_unit_vector(12, s);
      CHECK((inverse(b, forward(b, x)) - x).norm() < 1e-9);
    }
  }
  CHECK(code_of([&] { forward(b, CVector::Zero(5)); }) == ErrorCode::DimensionError);
  CHECK(code_of([&] { inverse(b, Spectrum(CVector::Zero(13))); }) == ErrorCode::DimensionError);
}

TEST_CASE("bandwidth") {
  CVector c(5);
  c << 1, 2, 0, 0, 0;
  CHECK(bandwidth(Spectrum(c)) == 2);
  c << 1, 2, 0, 1e-12, 0;
  CHECK(bandwidth(Spectrum(c)) == 4);
  CHECK(bandwidth(Spectrum(c), 1e-10) == 2);
  CHECK(bandwidth(Spectrum(CVector::Zero(3))) == 0);
  CHECK(code_of([&] { bandwidth(Spectrum(c), -1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("lowpass signal synthesis") {
  const SpectralBasis b = gft(generate_dct_path(10));
  const CVector profile = random_unit_vector(5, 9);
  const Spectrum exact = forward(b, make_lowpass_signal(b, profile, 0.0, 1));
  CHECK(bandwidth(exact, 1e-12) <= 5);
  CHECK((exact.low() - profile).norm() < 1e-12);
  const Spectrum noisy = forward(b, make_lowpass_signal(b, profile, 0.25, 1));
  CHECK(noisy.high().norm() == doctest::Approx(0.25).epsilon(1e-12));
  const Spectrum pure = forward(b, make_lowpass_signal(b, CVector::Zero(5), 1.0, 2));
  CHECK(pure.low().norm() < 1e-12);
  CHECK(code_of([&] { make_lowpass_signal(b, profile, -0.1, 1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { make_lowpass_signal(b, CVector::Zero(4), 0.1, 1); }) == ErrorCode::DimensionError);
  CHECK(random_unit_vector(7, 3).norm() == doctest::Approx(1.0));
  CHECK(random_unit_vector(7, 3) == random_unit_vector(7, 3));
}

TEST_CASE("CSV export") {
  const SpectralBasis b = gft(generate_dct_path(2));
  std::ostringstream out;
  write_basis_csv(out, b);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# variant=adjacency");
  std::getline(in, line);
  CHECK(line == "eigenvalue,v1,v2");
  std::getline(in, line);
  CHECK(parse_complex(line.substr(0, line.find(','))).real() == doctest::Approx(2.0));
  CHECK(std::count(line.begin(), line.end(), ',') == 2);
  std::ostringstream spec;
  CVector c(2);
  c << Complex(1, -1), 0.5;
  write_spectrum_csv(spec, Spectrum(c));
  CHECK(spec.str() == "index,coefficient\n0,1-1j\n1,0.5+0j\n");
}
