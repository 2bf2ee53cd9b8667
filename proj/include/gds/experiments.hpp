#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gds/downsample.hpp"
#include "gds/graph.hpp"
#include "gds/spectral.hpp"

namespace gds {

inline constexpr std::uint64_t kDefaultSeed = 2016;

const char* code_version() noexcept;

/// Random-graph comparison of the greedy method against the baselines.
struct TrialConfig {
  Index n = 50;
  Index instances = 50;
  double density_lo = 0.02;
  double density_hi = 0.30;
  WeightModel weight_model = WeightModel::Uniform01;
  GftVariant variant = GftVariant::Adjacency;
  bool undirected = true;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

nlohmann::json to_json(const TrialConfig& config);
TrialConfig trial_config_from_json(const nlohmann::json& j);

/// One method's measurements on one instance (or one sweep cell).
struct MethodMeasure {
  std::string method;
  std::map<std::string, double> values;
  std::optional<std::string> error;
};

struct InstanceRow {
  Index index = 0;
  std::map<std::string, double> parameters;
  std::vector<MethodMeasure> measures;
};

/// Per-method means over the rows where the method succeeded.
struct MethodAggregate {
  std::string method;
  Index count = 0;
  Index failures = 0;
  std::map<std::string, double> means;
};

struct CurvePoint {
  double eps = 0.0;
  double mean_accuracy_db = 0.0;
  Index perfect_trials = 0;
};

struct Curve {
  std::string label;
  std::vector<Index> kept;
  double sdqm = 0.0;
  bool reconstructible = false;
  std::vector<CurvePoint> points;
};

struct ExperimentReport {
  std::string experiment;
  std::uint64_t seed = kDefaultSeed;
  std::string code_version;
  nlohmann::json config;
  std::vector<InstanceRow> rows;
  std::vector<MethodAggregate> aggregates;
  std::vector<Curve> curves;
  /// Instances where the transform itself could not be built.
  Index failed_instances = 0;
  nlohmann::json summary = nlohmann::json::object();

  const MethodAggregate* aggregate(const std::string& method) const;
};

std::vector<MethodAggregate> compute_aggregates(const std::vector<InstanceRow>& rows);

/// Per instance: draw a density from the configured range, generate the
/// graph, and score the greedy ("proposed"), "mst" and "polarity" partitions
/// by sdqm and cut index. Instance k uses the stream derive_seed(seed, k), so
/// `jobs` changes only the wall time.
ExperimentReport random_graph_trial(const TrialConfig& config, unsigned jobs = 1);

/// Mean reconstruction accuracy (dB) of each partition over `trials` lowpass
/// signals per eps. The low band is a seeded unit vector, so eps is the
/// high-to-low band energy ratio. Every partition sees the same signals.
/// Non-reconstructible partitions yield a curve with no points.
ExperimentReport accuracy_sweep(const SpectralBasis& basis, const std::vector<Partition>& partitions,
                                const std::vector<double>& eps_grid, Index trials,
                                std::uint64_t seed, std::vector<std::string> labels = {});

struct DctDemoConfig {
  Index n = 16;
  Index blocks = 100;
  /// High-band energy of the synthetic blocks relative to the low band.
  double eps = 0.05;
  std::uint64_t seed = kDefaultSeed;
};

/// Smooth n x n block: Gaussian coefficients on the low x low quarter of the
/// separable (Kronecker) spectrum with unit Frobenius norm, plus a random high
/// part of norm eps, synthesized through the basis in both dimensions.
CMatrix smooth_block(const SpectralBasis& basis, double eps, std::uint64_t seed);

/// Separable 2-D reconstruction of a block from its kept rows and columns.
CMatrix reconstruct_block(const DownsampleOperator& op, const CMatrix& block);

/// Greedy sampling of the DCT path against the every-other-vertex reference,
/// in sdqm and in mean percentage error over synthetic 2-D blocks.
ExperimentReport dct_demo(const DctDemoConfig& config = {});

/// JSON report; non-finite numbers are written as strings ("inf").
nlohmann::json to_json(const ExperimentReport& report, bool include_timestamp = true);

/// Flat CSV, one line per (row, method).
void write_csv(std::ostream& out, const ExperimentReport& report);

/// `report_<experiment>_<seed>`
std::string report_file_stem(const ExperimentReport& report);

/// JSON number, or a string for non-finite values.
nlohmann::json json_number(double value);

}  // namespace gds
