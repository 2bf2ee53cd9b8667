#pragma once

#include <cstdint>
#include <random>

namespace gds {

/// Seeded random source used by every generator and experiment.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard library distributions are not (their algorithms are
/// implementation-defined), so uniform and Gaussian variates are derived here
/// directly from the raw 64-bit words: uniform() takes the top 53 bits, and
/// gaussian() uses the Box-Muller transform. A given seed therefore yields the
/// same stream on every conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform();

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal N(0, 1).
  double gaussian();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Independent stream seed for work item `stream` of a run seeded with `seed`
/// (splitmix64 finalizer over both words). Serial and parallel runs draw the
/// same per-item streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace gds
