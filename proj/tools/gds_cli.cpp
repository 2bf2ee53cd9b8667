// gds: command-line front end for spectral graph downsampling.
//
// Exit codes: 0 success, 2 input error (usage, parse, dimensions), 3 domain
// error (defective transform, non-reconstructible partition, ...).

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gds/baselines.hpp"
#include "gds/downsample.hpp"
#include "gds/error.hpp"
#include "gds/experiments.hpp"
#include "gds/graph.hpp"
#include "gds/graph_io.hpp"
#include "gds/serialize.hpp"
#include "gds/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;

// Reconstructions whose relative error is at round-off level are reported as
// "perfect" rather than as a ~300 dB figure.
constexpr double kPerfectRelativeError = 1e-12;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("GDS_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw gds::Error(gds::ErrorCode::InvalidArgument, "GDS_SEED is not an unsigned integer");
    }
  }
  return gds::kDefaultSeed;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw gds::Error(gds::ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gds::Error(gds::ErrorCode::ParseError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw gds::Error(gds::ErrorCode::ParseError, "'" + path + "': " + e.what());
  }
}

struct GraphParams {
  std::string kind;
  gds::Index n = 0;
  gds::Index p = 0;
  gds::Index q = 0;
  double density = 0.1;
  std::string weights = "uniform01";
  bool directed = false;
  std::uint64_t seed = gds::kDefaultSeed;
};

gds::Graph make_graph(const GraphParams& g) {
  if (g.kind == "cycle") {
    return g.directed ? gds::generate_directed_cycle(g.n) : gds::generate_undirected_cycle(g.n);
  }
  if (g.kind == "dct") return gds::generate_dct_path(g.n);
  if (g.kind == "wheel") return gds::generate_wheel(g.n);
  if (g.kind == "random") {
    return gds::generate_random(g.n, g.density, gds::parse_weight_model(g.weights), !g.directed, g.seed);
  }
  if (g.kind == "bipartite") return gds::generate_bipartite(g.p, g.q, g.seed);
  throw gds::Error(gds::ErrorCode::InvalidArgument, "unknown graph kind '" + g.kind + "'");
}

std::vector<gds::Index> one_based(std::vector<gds::Index> v) {
  for (auto& x : v) ++x;
  return v;
}

// ---------------------------------------------------------------- downsample

json run_downsample(const gds::Graph& graph, gds::GftVariant variant, const std::string& method,
                    bool with_matrices, unsigned jobs) {
  const auto basis = gds::gft(graph, variant);
  json out = {{"method", method}, {"variant", gds::to_string(variant)}, {"n", graph.size()}};

  std::optional<gds::Partition> partition;
  if (method == "greedy") {
    partition = gds::greedy_downsample(basis, {jobs}).partition;
  } else if (method == "exhaustive") {
    auto result = gds::exhaustive_downsample(basis);
    json table = json::array();
    for (const auto& row : result.table) {
      table.push_back({{"kept", one_based(row.partition.kept_sorted())}, {"sdqm", row.sdqm}});
    }
    out["table"] = std::move(table);
    partition = std::move(result.partition);
  } else if (method == "mst") {
    partition = gds::mst_downsample(graph);
  } else if (method == "polarity") {
    auto result = gds::polarity_downsample(basis);
    out["real_part_fallback"] = result.real_part_fallback;
    partition = std::move(result.partition);
  } else {
    throw gds::Error(gds::ErrorCode::InvalidArgument, "unknown method '" + method + "'");
  }

  const auto op = gds::blocks(basis, *partition);
  out.update(gds::operator_to_json(op, gds::IndexBase::One, with_matrices));
  try {
    out["cut_index"] = gds::cut_index(graph, *partition).cut_index;
  } catch (const gds::Error& e) {
    out["cut_index"] = nullptr;
    out["cut_index_error"] = e.what();
  }
  return out;
}

// --------------------------------------------------------------- reconstruct

struct SignalFile {
  gds::CVector values;
  std::optional<gds::CVector> truth;
};

SignalFile read_signal_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gds::Error(gds::ErrorCode::ParseError, "cannot open '" + path + "'");
  std::vector<gds::Complex> values, truth;
  std::string line;
  bool first = true;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (first) {
      first = false;
      columns = cells.size();
      if (columns == 0 || columns > 2) {
        throw gds::Error(gds::ErrorCode::ParseError, "signal CSV needs one or two columns");
      }
      try {
        gds::parse_complex(cells[0]);
      } catch (const gds::Error&) {
        continue;  // header
      }
    }
    if (cells.size() != columns) throw gds::Error(gds::ErrorCode::ParseError, "ragged signal CSV");
    values.push_back(gds::parse_complex(cells[0]));
    if (columns == 2) truth.push_back(gds::parse_complex(cells[1]));
  }
  if (values.empty()) throw gds::Error(gds::ErrorCode::ParseError, "signal CSV has no values");
  SignalFile s;
  s.values = Eigen::Map<gds::CVector>(values.data(), static_cast<gds::Index>(values.size()));
  if (columns == 2) s.truth = Eigen::Map<gds::CVector>(truth.data(), static_cast<gds::Index>(truth.size()));
  return s;
}

std::string run_reconstruct(const gds::Graph& graph, gds::GftVariant variant, const gds::Partition& partition,
                            const SignalFile& signal, std::string& accuracy_text) {
  if (partition.size() != graph.size()) {
    throw gds::Error(gds::ErrorCode::DimensionError, "partition is for " + std::to_string(partition.size()) +
                                                         " vertices, graph has " + std::to_string(graph.size()));
  }
  const auto kept_count = static_cast<gds::Index>(partition.kept().size());
  gds::CVector x_kept;
  if (signal.values.size() == graph.size()) {
    x_kept = gds::restrict_to_kept(partition, signal.values);
  } else if (signal.values.size() == kept_count && !signal.truth) {
    x_kept = signal.values;
  } else {
    throw gds::Error(gds::ErrorCode::DimensionError,
                     "signal has " + std::to_string(signal.values.size()) + " rows; expected " +
                         std::to_string(graph.size()) + " (full) or " + std::to_string(kept_count) + " (kept only)");
  }
  const auto basis = gds::gft(graph, variant);
  const auto op = gds::blocks(basis, partition);
  const gds::GraphSignal full = gds::reconstruct_signal(op, x_kept);

  std::ostringstream out;
  accuracy_text.clear();
  if (signal.truth) {
    const gds::CVector err = *signal.truth - full;
    const double acc = gds::reconstruction_accuracy(*signal.truth, err);
    if (err.norm() <= kPerfectRelativeError * signal.truth->norm()) {
      accuracy_text = "perfect";
    } else {
      std::ostringstream a;
      a << std::setprecision(10) << acc;
      accuracy_text = a.str();
    }
    out << "# accuracy_db=" << accuracy_text << '\n';
  }
  out << "vertex,value\n";
  for (gds::Index v = 0; v < full.size(); ++v) out << v + 1 << ',' << gds::format_complex(full(v)) << '\n';
  return out.str();
}

// --------------------------------------------------------------------- bench

struct BenchRun {
  std::string experiment;
  json spec;
};

std::vector<BenchRun> parse_bench_config(const json& config) {
  if (!config.is_object()) throw gds::Error(gds::ErrorCode::InvalidArgument, "bench config must be a JSON object");
  std::vector<json> specs;
  if (config.contains("runs")) {
    if (!config["runs"].is_array()) throw gds::Error(gds::ErrorCode::InvalidArgument, "'runs' must be an array");
    for (const auto& r : config["runs"]) specs.push_back(r);
  } else {
    specs.push_back(config);
  }
  std::vector<BenchRun> runs;
  for (const auto& s : specs) {
    if (!s.is_object() || !s.contains("experiment") || !s["experiment"].is_string()) {
      throw gds::Error(gds::ErrorCode::InvalidArgument, "every run needs an 'experiment' string");
    }
    const auto name = s["experiment"].get<std::string>();
    if (name != "random_trial" && name != "accuracy_sweep" && name != "dct") {
      throw gds::Error(gds::ErrorCode::InvalidArgument, "unknown experiment '" + name + "'");
    }
    runs.push_back({name, s});
  }
  return runs;
}

GraphParams graph_params_from_json(const json& g, std::uint64_t seed) {
  GraphParams p;
  p.kind = g.at("kind").get<std::string>();
  p.n = g.value("n", gds::Index{0});
  p.p = g.value("p", gds::Index{0});
  p.q = g.value("q", gds::Index{0});
  p.density = g.value("density", 0.1);
  p.weights = g.value("weights", std::string("uniform01"));
  p.directed = g.value("directed", false);
  p.seed = g.value("seed", seed);
  return p;
}

gds::ExperimentReport execute_run(const BenchRun& run, std::uint64_t seed, unsigned jobs, const fs::path& base_dir) {
  json spec = run.spec;
  if (!spec.contains("seed")) spec["seed"] = seed;
  const auto run_seed = spec["seed"].get<std::uint64_t>();

  if (run.experiment == "random_trial") {
    return gds::random_graph_trial(gds::trial_config_from_json(spec), jobs);
  }
  if (run.experiment == "dct") {
    gds::DctDemoConfig c;
    c.n = spec.value("n", c.n);
    c.blocks = spec.value("blocks", c.blocks);
    c.eps = spec.value("eps", c.eps);
    c.seed = run_seed;
    return gds::dct_demo(c);
  }
  // accuracy_sweep
  gds::Graph graph = spec.contains("graph_file")
                         ? gds::read_graph(base_dir / spec["graph_file"].get<std::string>())
                         : make_graph(graph_params_from_json(spec.at("graph"), run_seed));
  const auto variant = gds::parse_gft_variant(spec.value("variant", std::string("adjacency")));
  const auto basis = gds::gft(graph, variant);
  std::vector<gds::Partition> partitions;
  std::vector<std::string> labels;
  for (const auto& kept : spec.value("partitions", json::array())) {
    std::vector<gds::Index> k = kept.get<std::vector<gds::Index>>();
    std::string label = "kept";
    for (auto& v : k) {
      label += "_" + std::to_string(v);
      --v;
    }
    partitions.push_back(gds::Partition::from_kept(graph.size(), k));
    labels.push_back(label);
  }
  for (const auto& m : spec.value("methods", json::array())) {
    const auto method = m.get<std::string>();
    if (method == "greedy") partitions.push_back(gds::greedy_downsample(basis, {jobs}).partition);
    else if (method == "mst") partitions.push_back(gds::mst_downsample(graph));
    else if (method == "polarity") partitions.push_back(gds::polarity_downsample(basis).partition);
    else throw gds::Error(gds::ErrorCode::InvalidArgument, "unknown sweep method '" + method + "'");
    labels.push_back(method);
  }
  if (partitions.empty()) throw gds::Error(gds::ErrorCode::InvalidArgument, "sweep needs 'partitions' or 'methods'");
  const auto eps_grid = spec.at("eps_grid").get<std::vector<double>>();
  const auto trials = spec.value("trials", gds::Index{50});
  auto report = gds::accuracy_sweep(basis, partitions, eps_grid, trials, run_seed, labels);
  report.config["graph"] = spec.contains("graph") ? spec["graph"] : json(spec["graph_file"]);
  return report;
}

int report_error(const gds::Error& e) {
  const json err = {{"error", {{"code", gds::to_string(e.code())}, {"message", e.what()}}}};
  std::cout << err.dump() << '\n';
  std::cerr << "gds: " << e.what() << '\n';
  return gds::is_input_error(e.code()) ? kExitInput : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral downsampling of graph signals"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::uint64_t seed = gds::kDefaultSeed;
  bool no_timestamp = false;
  unsigned jobs = 1;
  std::string variant_name = "adjacency";
  std::string out_path;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a graph (cycle, dct, wheel, random, bipartite)");
  GraphParams gp;
  gen->add_option("kind", gp.kind, "Graph family")->required()->check(CLI::IsMember({"cycle", "dct", "wheel", "random", "bipartite"}));
  gen->add_option("--n", gp.n, "Vertex count");
  gen->add_option("--p", gp.p, "Bipartite side p");
  gen->add_option("--q", gp.q, "Bipartite side q");
  gen->add_option("--density", gp.density, "Edge probability (random)");
  gen->add_option("--weights", gp.weights, "uniform01 | gaussian01 (random)");
  gen->add_flag("--directed", gp.directed, "Directed cycle / random graph");
  gen->add_option("--seed", seed, "Seed (default $GDS_SEED or 2016)");
  gen->add_option("-o,--out", out_path, "Output file (.mtx for Matrix Market, else CSV)");

  // gft
  auto* gftc = app.add_subcommand("gft", "Write the graph Fourier basis as CSV");
  std::string graph_path;
  gftc->add_option("graph", graph_path, "Graph file")->required();
  gftc->add_option("--variant", variant_name, "adjacency | laplacian | normalized_laplacian");
  gftc->add_option("-o,--out", out_path, "Output CSV");

  // downsample
  auto* down = app.add_subcommand("downsample", "Choose kept/purged vertices");
  std::string method = "greedy";
  bool with_matrices = false;
  down->add_option("graph", graph_path, "Graph file")->required();
  down->add_option("--variant", variant_name, "adjacency | laplacian | normalized_laplacian");
  down->add_option("--method", method, "greedy | exhaustive | mst | polarity")
      ->check(CLI::IsMember({"greedy", "exhaustive", "mst", "polarity"}));
  down->add_flag("--with-matrices", with_matrices, "Include F_kL and the reconstruction map");
  down->add_option("--jobs", jobs, "Threads for candidate scoring");
  down->add_flag("--no-timestamp", no_timestamp, "Omit the generated_at field");
  down->add_option("-o,--out", out_path, "Output JSON");

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "Rebuild a full signal from its kept samples");
  std::string partition_path, signal_path;
  rec->add_option("graph", graph_path, "Graph file")->required();
  rec->add_option("--partition", partition_path, "Partition JSON (downsample output)")->required();
  rec->add_option("--signal", signal_path, "Signal CSV: value[,truth] per vertex, or kept values only")->required();
  rec->add_option("--variant", variant_name, "adjacency | laplacian | normalized_laplacian");
  rec->add_option("-o,--out", out_path, "Output CSV");

  // bench
  auto* bench = app.add_subcommand("bench", "Run experiments from a JSON config");
  std::string config_path;
  std::string out_dir = ".";
  bool dry_run = false;
  bench->add_option("config", config_path, "Experiment config JSON")->required();
  bench->add_option("--out-dir", out_dir, "Directory for report files");
  bench->add_option("--seed", seed, "Seed for runs without their own");
  bench->add_option("--jobs", jobs, "Worker threads");
  bench->add_flag("--dry-run", dry_run, "Print the plan and write nothing");
  bench->add_flag("--no-timestamp", no_timestamp, "Omit the generated_at field");

  try {
    seed = default_seed();
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  } catch (const gds::Error& e) {
    return report_error(e);
  }

  try {
    if (gen->parsed()) {
      gp.seed = seed;
      const auto graph = make_graph(gp);
      std::ostringstream ss;
      if (!out_path.empty() && gds::format_for_path(out_path) == gds::GraphFormat::MatrixMarket) {
        gds::write_graph_mtx(ss, graph);
      } else {
        gds::write_graph_csv(ss, graph);
      }
      write_text(out_path, ss.str());
    } else if (gftc->parsed()) {
      const auto basis = gds::gft(gds::read_graph(graph_path), gds::parse_gft_variant(variant_name));
      std::ostringstream ss;
      gds::write_basis_csv(ss, basis);
      write_text(out_path, ss.str());
    } else if (down->parsed()) {
      const auto graph = gds::read_graph(graph_path);
      json out = run_downsample(graph, gds::parse_gft_variant(variant_name), method, with_matrices, jobs);
      if (!no_timestamp) out["generated_at"] = utc_now();
      write_text(out_path, out.dump(2) + "\n");
    } else if (rec->parsed()) {
      const auto graph = gds::read_graph(graph_path);
      const auto partition = gds::partition_from_json(read_json_file(partition_path), gds::IndexBase::One);
      std::string accuracy;
      const auto text = run_reconstruct(graph, gds::parse_gft_variant(variant_name), partition,
                                        read_signal_csv(signal_path), accuracy);
      write_text(out_path, text);
      if (!accuracy.empty() && !out_path.empty()) std::cout << "accuracy_db=" << accuracy << '\n';
    } else if (bench->parsed()) {
      const auto runs = parse_bench_config(read_json_file(config_path));
      const fs::path dir(out_dir);
      const fs::path base = fs::path(config_path).parent_path();
      if (dry_run) {
        for (const auto& r : runs) {
          const auto run_seed = r.spec.value("seed", seed);
          std::cout << "plan: " << r.experiment << " seed=" << run_seed << " -> " << dir.string() << '\n';
        }
        return kExitOk;
      }
      fs::create_directories(dir);
      for (const auto& r : runs) {
        const auto report = execute_run(r, seed, jobs, base);
        const auto stem = gds::report_file_stem(report);
        write_text((dir / (stem + ".json")).string(), gds::to_json(report, !no_timestamp).dump(2) + "\n");
        std::ostringstream csv;
        gds::write_csv(csv, report);
        write_text((dir / (stem + ".csv")).string(), csv.str());
        std::cout << "wrote " << (dir / (stem + ".json")).string() << '\n';
        for (const auto& a : report.aggregates) {
          std::cout << "  " << a.method << ":";
          for (const auto& [k, v] : a.means) std::cout << ' ' << k << '=' << v;
          std::cout << '\n';
        }
      }
    }
  } catch (const gds::Error& e) {
    return report_error(e);
  } catch (const nlohmann::json::exception& e) {
    return report_error(gds::Error(gds::ErrorCode::InvalidArgument, std::string("config: ") + e.what()));
  } catch (const fs::filesystem_error& e) {
    return report_error(gds::Error(gds::ErrorCode::InvalidArgument, e.what()));
  }
  return kExitOk;
}
