#include "gds/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "gds/baselines.hpp"
#include "gds/error.hpp"
#include "gds/rng.hpp"

#ifndef GDS_VERSION
#define GDS_VERSION "unknown"
#endif

namespace gds {

const char* code_version() noexcept { return GDS_VERSION; }

void TrialConfig::validate() const {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "trial n must be >= 2");
  if (instances < 1) throw Error(ErrorCode::InvalidArgument, "trial needs at least one instance");
  if (!(density_lo > 0.0 && density_lo <= density_hi && density_hi <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "density range must satisfy 0 < lo <= hi <= 1");
  }
}

nlohmann::json to_json(const TrialConfig& c) {
  return {{"n", c.n},
          {"instances", c.instances},
          {"density_range", {c.density_lo, c.density_hi}},
          {"weight_model", to_string(c.weight_model)},
          {"variant", to_string(c.variant)},
          {"undirected", c.undirected},
          {"seed", c.seed}};
}

TrialConfig trial_config_from_json(const nlohmann::json& j) {
  static const std::set<std::string> known = {"experiment", "n", "instances", "density_range", "weight_model",
                                              "variant", "undirected", "seed"};
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "trial config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw Error(ErrorCode::InvalidArgument, "unknown trial config key '" + key + "'");
  }
  TrialConfig c;
  try {
    if (j.contains("n")) c.n = j.at("n").get<Index>();
    if (j.contains("instances")) c.instances = j.at("instances").get<Index>();
    if (j.contains("density_range")) {
      const auto& r = j.at("density_range");
      if (!r.is_array() || r.size() != 2) {
        throw Error(ErrorCode::InvalidArgument, "density_range must be [lo, hi]");
      }
      c.density_lo = r[0].get<double>();
      c.density_hi = r[1].get<double>();
    }
    if (j.contains("weight_model")) c.weight_model = parse_weight_model(j.at("weight_model").get<std::string>());
    if (j.contains("variant")) c.variant = parse_gft_variant(j.at("variant").get<std::string>());
    if (j.contains("undirected")) c.undirected = j.at("undirected").get<bool>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("trial config: ") + e.what());
  }
  c.validate();
  return c;
}

const MethodAggregate* ExperimentReport::aggregate(const std::string& method) const {
  for (const auto& a : aggregates) {
    if (a.method == method) return &a;
  }
  return nullptr;
}

std::vector<MethodAggregate> compute_aggregates(const std::vector<InstanceRow>& rows) {
  std::vector<MethodAggregate> out;
  auto slot = [&](const std::string& method) -> MethodAggregate& {
    for (auto& a : out) {
      if (a.method == method) return a;
    }
    out.push_back({method, 0, 0, {}});
    return out.back();
  };
  for (const auto& row : rows) {
    for (const auto& m : row.measures) {
      auto& agg = slot(m.method);
      if (m.error) {
        ++agg.failures;
        continue;
      }
      ++agg.count;
      for (const auto& [key, value] : m.values) agg.means[key] += value;
    }
  }
  for (auto& agg : out) {
    for (auto& [key, sum] : agg.means) sum /= static_cast<double>(agg.count);
  }
  return out;
}

namespace {

template <typename Fn>
void parallel_for(Index count, unsigned jobs, Fn&& fn) {
  const auto workers = static_cast<Index>(std::max(1u, jobs));
  if (workers == 1 || count <= 1) {
    for (Index i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (Index w = 0; w < std::min(workers, count); ++w) {
    pool.emplace_back([&, w] {
      for (Index i = w; i < count; i += workers) fn(i);
    });
  }
}

MethodMeasure measure(const std::string& method, const Graph& graph, const SpectralBasis& basis,
                      const auto& make_partition) {
  MethodMeasure m{method, {}, std::nullopt};
  try {
    const Partition p = make_partition();
    const auto op = blocks(basis, p);
    m.values["sdqm"] = op.sdqm();
    m.values["reconstructible"] = is_perfectly_reconstructible(op) ? 1.0 : 0.0;
    m.values["cut_index"] = cut_index(graph, p).cut_index;
  } catch (const Error& e) {
    m.error = e.what();
    m.values.clear();
  }
  return m;
}

}  // namespace

ExperimentReport random_graph_trial(const TrialConfig& config, unsigned jobs) {
  config.validate();
  ExperimentReport report;
  report.experiment = std::string("random_trial_") + to_string(config.weight_model);
  report.seed = config.seed;
  report.code_version = code_version();
  report.config = to_json(config);
  report.rows.resize(static_cast<std::size_t>(config.instances));

  parallel_for(config.instances, jobs, [&](Index k) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(k)));
    const double density = rng.uniform(config.density_lo, config.density_hi);
    const std::uint64_t graph_seed = rng.next();
    InstanceRow row;
    row.index = k;
    row.parameters["density"] = density;
    try {
      const Graph graph = generate_random(config.n, density, config.weight_model, config.undirected, graph_seed);
      const SpectralBasis basis = gft(graph, config.variant);
      row.measures.push_back(measure("proposed", graph, basis, [&] { return greedy_downsample(basis).partition; }));
      row.measures.push_back(measure("mst", graph, basis, [&] { return mst_downsample(graph); }));
      row.measures.push_back(measure("polarity", graph, basis, [&] { return polarity_downsample(basis).partition; }));
    } catch (const Error& e) {
      row.parameters["failed"] = 1.0;
      for (const char* method : {"proposed", "mst", "polarity"}) {
        row.measures.push_back({method, {}, std::string(e.what())});
      }
    }
    report.rows[static_cast<std::size_t>(k)] = std::move(row);
  });

  for (const auto& row : report.rows) {
    if (row.parameters.contains("failed")) ++report.failed_instances;
  }
  report.aggregates = compute_aggregates(report.rows);
  return report;
}

ExperimentReport accuracy_sweep(const SpectralBasis& basis, const std::vector<Partition>& partitions,
                                const std::vector<double>& eps_grid, Index trials,
                                std::uint64_t seed, std::vector<std::string> labels) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "sweep needs at least one trial");
  if (!labels.empty() && labels.size() != partitions.size()) {
    throw Error(ErrorCode::DimensionError, "one label per partition expected");
  }
  for (double eps : eps_grid) {
    if (!(eps >= 0.0)) throw Error(ErrorCode::InvalidArgument, "eps values must be non-negative");
  }
  ExperimentReport report;
  report.experiment = "accuracy_sweep";
  report.seed = seed;
  report.code_version = code_version();
  report.config = {{"n", basis.size()},
                   {"variant", to_string(basis.variant())},
                   {"eps_grid", eps_grid},
                   {"trials", trials},
                   {"seed", seed}};

  // Shared signal directions: trial t uses the same low profile and high
  // direction for every partition and every eps.
  std::vector<CVector> profiles;
  std::vector<std::uint64_t> high_seeds;
  for (Index t = 0; t < trials; ++t) {
    profiles.push_back(random_unit_vector(basis.low_size(), derive_seed(seed, 2 * static_cast<std::uint64_t>(t))));
    high_seeds.push_back(derive_seed(seed, 2 * static_cast<std::uint64_t>(t) + 1));
  }

  Index cell = 0;
  for (std::size_t pi = 0; pi < partitions.size(); ++pi) {
    const Partition& p = partitions[pi];
    Curve curve;
    curve.label = labels.empty() ? "partition_" + std::to_string(pi + 1) : labels[pi];
    curve.kept = p.kept_sorted();
    const auto op = blocks(basis, p);
    curve.sdqm = op.sdqm();
    curve.reconstructible = is_perfectly_reconstructible(op);
    if (!curve.reconstructible) {
      InstanceRow row{cell++, {{"partition", static_cast<double>(pi + 1)}}, {}};
      row.measures.push_back({curve.label, {}, std::string("NotReconstructible: partition skipped")});
      report.rows.push_back(std::move(row));
      report.curves.push_back(std::move(curve));
      continue;
    }
    for (double eps : eps_grid) {
      CurvePoint point{eps, 0.0, 0};
      for (Index t = 0; t < trials; ++t) {
        const GraphSignal x = make_lowpass_signal(basis, profiles[t], eps, high_seeds[t]);
        const GraphSignal xr = reconstruct_signal(op, restrict_to_kept(p, x));
        const double acc = reconstruction_accuracy(x, x - xr);
        if (std::isinf(acc)) ++point.perfect_trials;
        point.mean_accuracy_db += acc;
      }
      point.mean_accuracy_db /= static_cast<double>(trials);
      InstanceRow row{cell++, {{"partition", static_cast<double>(pi + 1)}, {"eps", eps}}, {}};
      row.measures.push_back({curve.label,
                              {{"mean_accuracy_db", point.mean_accuracy_db},
                               {"sdqm", curve.sdqm},
                               {"perfect_trials", static_cast<double>(point.perfect_trials)}},
                              std::nullopt});
      report.rows.push_back(std::move(row));
      curve.points.push_back(point);
    }
    report.curves.push_back(std::move(curve));
  }
  report.aggregates = compute_aggregates(report.rows);
  return report;
}

CMatrix smooth_block(const SpectralBasis& basis, double eps, std::uint64_t seed) {
  if (!(eps >= 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be non-negative");
  const Index n = basis.size();
  const Index low = basis.low_size();
  Rng rng(seed);
  Matrix lowpart = Matrix::Zero(n, n);
  Matrix highpart = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double g = rng.gaussian();
      if (i < low && j < low) lowpart(i, j) = g;
      else highpart(i, j) = g;
    }
  }
  lowpart /= lowpart.norm();
  if (highpart.norm() > 0.0) highpart *= eps / highpart.norm();
  const CMatrix coeffs = (lowpart + highpart).cast<Complex>();
  return basis.inverse() * coeffs * basis.inverse().transpose();
}

CMatrix reconstruct_block(const DownsampleOperator& op, const CMatrix& block) {
  const Partition& p = op.partition();
  if (block.rows() != p.size() || block.cols() != p.size()) {
    throw Error(ErrorCode::DimensionError, "block must be n x n");
  }
  const auto m = static_cast<Index>(p.kept().size());
  CMatrix sampled(m, m);
  for (Index r = 0; r < m; ++r) {
    for (Index c = 0; c < m; ++c) sampled(r, c) = block(p.kept()[r], p.kept()[c]);
  }
  const CMatrix r = reconstruction_operator(op);
  return r * sampled * r.transpose();
}

ExperimentReport dct_demo(const DctDemoConfig& config) {
  if (config.n < 2 || config.n % 2 != 0) throw Error(ErrorCode::InvalidArgument, "DCT demo needs an even n");
  if (config.blocks < 1) throw Error(ErrorCode::InvalidArgument, "DCT demo needs at least one block");
  const Graph graph = generate_dct_path(config.n);
  const SpectralBasis basis = gft(graph, GftVariant::Adjacency);
  const auto greedy = greedy_downsample(basis);
  std::vector<Index> alternate;
  for (Index v = 0; v < config.n; v += 2) alternate.push_back(v);
  const Partition reference = Partition::from_kept(config.n, alternate);
  const auto ref_op = blocks(basis, reference);

  ExperimentReport report;
  report.experiment = "dct";
  report.seed = config.seed;
  report.code_version = code_version();
  report.config = {{"n", config.n}, {"blocks", config.blocks}, {"eps", config.eps}, {"seed", config.seed}};

  for (Index b = 0; b < config.blocks; ++b) {
    const CMatrix block = smooth_block(basis, config.eps, derive_seed(config.seed, static_cast<std::uint64_t>(b)));
    InstanceRow row{b, {}, {}};
    for (const auto* op : {&greedy.op, &ref_op}) {
      const double err = 100.0 * (block - reconstruct_block(*op, block)).norm() / block.norm();
      row.measures.push_back({op == &greedy.op ? "greedy" : "alternate",
                              {{"block_error_pct", err}, {"sdqm", op->sdqm()}},
                              std::nullopt});
    }
    report.rows.push_back(std::move(row));
  }
  report.aggregates = compute_aggregates(report.rows);

  auto one_indexed = [](std::vector<Index> v) {
    for (auto& x : v) ++x;
    return v;
  };
  report.summary = {{"kept_greedy", one_indexed(greedy.partition.kept_sorted())},
                    {"kept_alternate", one_indexed(reference.kept_sorted())},
                    {"sdqm_greedy", greedy.op.sdqm()},
                    {"sdqm_alternate", ref_op.sdqm()},
                    {"mean_block_error_pct_greedy", report.aggregate("greedy")->means.at("block_error_pct")},
                    {"mean_block_error_pct_alternate", report.aggregate("alternate")->means.at("block_error_pct")}};
  return report;
}

nlohmann::json json_number(double value) {
  if (std::isfinite(value)) return value;
  if (std::isnan(value)) return "nan";
  return value > 0 ? "inf" : "-inf";
}

namespace {

nlohmann::json values_json(const std::map<std::string, double>& values) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : values) j[k] = json_number(v);
  return j;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

}  // namespace

nlohmann::json to_json(const ExperimentReport& report, bool include_timestamp) {
  nlohmann::json j;
  j["experiment"] = report.experiment;
  j["provenance"] = {{"code_version", report.code_version}, {"seed", report.seed}, {"config", report.config}};
  if (include_timestamp) j["provenance"]["generated_at"] = utc_timestamp();
  j["failed_instances"] = report.failed_instances;

  auto& aggs = j["aggregates"] = nlohmann::json::array();
  for (const auto& a : report.aggregates) {
    aggs.push_back({{"method", a.method}, {"count", a.count}, {"failures", a.failures}, {"means", values_json(a.means)}});
  }
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json measures = nlohmann::json::array();
    for (const auto& m : r.measures) {
      nlohmann::json mj = {{"method", m.method}, {"values", values_json(m.values)}};
      if (m.error) mj["error"] = *m.error;
      measures.push_back(std::move(mj));
    }
    rows.push_back({{"index", r.index}, {"parameters", values_json(r.parameters)}, {"measures", std::move(measures)}});
  }
  if (!report.curves.empty()) {
    auto& curves = j["curves"] = nlohmann::json::array();
    for (const auto& c : report.curves) {
      std::vector<Index> kept = c.kept;
      for (auto& v : kept) ++v;
      nlohmann::json points = nlohmann::json::array();
      for (const auto& p : c.points) {
        points.push_back({{"eps", p.eps}, {"mean_accuracy_db", json_number(p.mean_accuracy_db)}, {"perfect_trials", p.perfect_trials}});
      }
      curves.push_back({{"label", c.label}, {"kept", kept}, {"sdqm", c.sdqm}, {"reconstructible", c.reconstructible}, {"points", std::move(points)}});
    }
  }
  if (!report.summary.empty()) j["summary"] = report.summary;
  return j;
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
  std::set<std::string> param_keys, value_keys;
  for (const auto& r : report.rows) {
    for (const auto& [k, v] : r.parameters) param_keys.insert(k);
    for (const auto& m : r.measures) {
      for (const auto& [k, v] : m.values) value_keys.insert(k);
    }
  }
  out << "index";
  for (const auto& k : param_keys) out << ',' << k;
  out << ",method";
  for (const auto& k : value_keys) out << ',' << k;
  out << ",error\n";
  out << std::setprecision(17);
  for (const auto& r : report.rows) {
    for (const auto& m : r.measures) {
      out << r.index;
      for (const auto& k : param_keys) {
        out << ',';
        if (auto it = r.parameters.find(k); it != r.parameters.end()) out << it->second;
      }
      out << ',' << m.method;
      for (const auto& k : value_keys) {
        out << ',';
        if (auto it = m.values.find(k); it != m.values.end()) out << it->second;
      }
      out << ',';
      if (m.error) {
        std::string e = *m.error;
        std::replace(e.begin(), e.end(), ',', ';');
        out << e;
      }
      out << '\n';
    }
  }
}

std::string report_file_stem(const ExperimentReport& report) {
  return "report_" + report.experiment + "_" + std::to_string(report.seed);
}

}  // namespace gds
