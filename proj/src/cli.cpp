#include "dpc/cli.hpp"

#include <fstream>
#include <iostream>
#include <unordered_set>

#include "CLI11.hpp"
#include "dpc/bench.hpp"
#include "dpc/datagen.hpp"
#include "dpc/io.hpp"
#include "dpc/parallel.hpp"
#include "dpc/pipeline.hpp"

namespace dpc {

namespace {

struct ClusterArgs {
  std::string input;
  DpcParams params;
  std::string algo = "priority";
  unsigned threads = 0;
  std::string labels_out;
  std::string decision_graph;
  std::string report_json;
  bool dedup = false;
};

struct GenArgs {
  std::string kind = "uniform";
  std::size_t n = 1000;
  std::size_t d = 2;
  std::uint64_t seed = 1;
  std::size_t clusters = 10;
  double extent = 1e5;
  std::string out;
  bool binary = false;
};

struct BenchArgs {
  std::string sweep = "size";
  std::string algo = "priority";
  std::string kind = "simden";
  std::size_t d = 2;
  std::uint64_t seed = 1;
  std::size_t n = 100000;
  std::vector<std::size_t> sizes;
  std::vector<unsigned> threads;
  std::vector<double> fractions;
  double rho_min = 0.0;
  std::string out;
  std::string format = "csv";
};

PointSet dedup_points(const PointSet& points) {
  std::unordered_set<std::string> seen;
  std::vector<double> coords;
  const std::size_t d = points.dim();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const PointView p = points[i];
    std::string key(reinterpret_cast<const char*>(p.data()), d * sizeof(double));
    if (seen.insert(std::move(key)).second) {
      coords.insert(coords.end(), p.begin(), p.end());
    }
  }
  return PointSet(std::move(coords), d);
}

int run_cluster(const ClusterArgs& args) {
  par::set_workers(args.threads);
  PointSet points = read_points(args.input);
  if (args.dedup) {
    const std::size_t before = points.size();
    points = dedup_points(points);
    if (points.size() != before) {
      std::cerr << "dedup: " << before - points.size() << " duplicate points removed\n";
    }
  }

  StepTimes times;
  const Strategy strategy = strategy_from_string(args.algo);
  const DpcResult result = run_dpc(points, args.params, strategy, &times);

  write_labels(args.labels_out, result);
  if (!args.decision_graph.empty()) write_decision_graph(args.decision_graph, result);
  if (!args.report_json.empty()) {
    RunReport report;
    report.step_times = times;
    report.n = points.size();
    report.d = points.dim();
    report.params = args.params;
    report.algo = strategy;
    report.threads = par::workers();
    report.clusters = result.cluster_count();
    report.noise = result.noise_count();
    report.labels_digest = labels_digest(result.labels);
    std::ofstream out(args.report_json);
    if (!out) throw std::runtime_error("cannot write " + args.report_json);
    out << run_report_json(report) << '\n';
  }
  std::cerr << "clustered " << points.size() << " points: " << result.cluster_count()
            << " clusters, " << result.noise_count() << " noise\n";
  return 0;
}

int run_gen(const GenArgs& args) {
  GenSpec spec{gen_kind_from_string(args.kind), args.n, args.d,
               args.seed,                       args.clusters, args.extent};
  const PointSet points = generate(spec);
  if (args.binary) {
    write_points_binary(args.out, points);
  } else {
    write_points_csv(args.out, points);
  }
  std::cerr << "wrote " << points.size() << " points (d=" << points.dim() << ") to "
            << args.out << '\n';
  return 0;
}

int run_bench(const BenchArgs& args) {
  SweepSpec spec;
  spec.axis = sweep_axis_from_string(args.sweep);
  spec.algo = strategy_from_string(args.algo);
  spec.kind = gen_kind_from_string(args.kind);
  spec.d = args.d;
  spec.seed = args.seed;
  spec.n = args.n;
  spec.rho_min = args.rho_min;
  if (!args.sizes.empty()) spec.sizes = args.sizes;
  if (!args.threads.empty()) spec.threads = args.threads;
  if (!args.fractions.empty()) spec.fractions = args.fractions;

  const std::vector<RunReport> rows = bench_sweep(spec);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out);
    if (!file) throw std::runtime_error("cannot write " + args.out);
    out = &file;
  }
  if (args.format == "json") {
    *out << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      *out << run_report_json(rows[i]) << (i + 1 < rows.size() ? ",\n" : "\n");
    }
    *out << "]\n";
  } else if (args.format == "csv") {
    *out << run_report_csv_header() << '\n';
    for (const RunReport& row : rows) *out << run_report_csv_row(row) << '\n';
  } else {
    throw CLI::ValidationError("--format", "must be csv or json");
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Exact density peaks clustering toolkit"};
  app.require_subcommand(1);

  ClusterArgs cluster;
  auto* cmd_cluster = app.add_subcommand("cluster", "cluster a point file");
  cmd_cluster->add_option("--input", cluster.input, "input points (CSV or binary cache)")
      ->required();
  cmd_cluster->add_option("--dcut", cluster.params.d_cut, "density radius")->required();
  cmd_cluster->add_option("--rho-min", cluster.params.rho_min, "noise density cutoff")
      ->required();
  cmd_cluster->add_option("--delta-min", cluster.params.delta_min, "center distance cutoff")
      ->required();
  cmd_cluster
      ->add_option("--algo", cluster.algo, "dependent point finder")
      ->check(CLI::IsMember({"priority", "fenwick", "incomplete", "bruteforce"}));
  cmd_cluster->add_option("--threads", cluster.threads, "worker count (0 = hardware)");
  cmd_cluster->add_option("--labels-out", cluster.labels_out, "labels CSV output")->required();
  cmd_cluster->add_option("--decision-graph", cluster.decision_graph,
                          "decision graph CSV output");
  cmd_cluster->add_option("--report-json", cluster.report_json, "run report JSON output");
  cmd_cluster->add_flag("--dedup", cluster.dedup, "drop exact duplicate points before clustering");

  GenArgs gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate a synthetic dataset");
  cmd_gen->add_option("--kind", gen.kind, "generator kind")
      ->check(CLI::IsMember({"uniform", "simden", "varden"}));
  cmd_gen->add_option("--n", gen.n, "number of points")->required();
  cmd_gen->add_option("--d", gen.d, "dimension");
  cmd_gen->add_option("--seed", gen.seed, "RNG seed");
  cmd_gen->add_option("--clusters", gen.clusters, "cluster count (simden/varden)");
  cmd_gen->add_option("--extent", gen.extent, "domain side length");
  cmd_gen->add_option("--out", gen.out, "output file")->required();
  cmd_gen->add_flag("--binary", gen.binary, "write the packed binary cache format");

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "run a scaling sweep");
  cmd_bench->add_option("--sweep", bench.sweep, "sweep axis")
      ->check(CLI::IsMember({"size", "threads", "dcut"}))
      ->required();
  cmd_bench->add_option("--algo", bench.algo, "dependent point finder")
      ->check(CLI::IsMember({"priority", "fenwick", "incomplete", "bruteforce"}));
  cmd_bench->add_option("--kind", bench.kind, "generator kind")
      ->check(CLI::IsMember({"uniform", "simden", "varden"}));
  cmd_bench->add_option("--d", bench.d, "dimension");
  cmd_bench->add_option("--seed", bench.seed, "RNG seed");
  cmd_bench->add_option("--n", bench.n, "dataset size for threads/dcut sweeps");
  cmd_bench->add_option("--sizes", bench.sizes, "size grid for the size sweep");
  cmd_bench->add_option("--threads-list", bench.threads, "thread grid for the threads sweep");
  cmd_bench->add_option("--fractions", bench.fractions,
                        "mean-neighbor fractions for the dcut sweep");
  cmd_bench->add_option("--rho-min", bench.rho_min, "noise density cutoff");
  cmd_bench->add_option("--out", bench.out, "output file (default stdout)");
  cmd_bench->add_option("--format", bench.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_cluster->parsed()) return run_cluster(cluster);
    if (cmd_gen->parsed()) return run_gen(gen);
    if (cmd_bench->parsed()) return run_bench(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace dpc
