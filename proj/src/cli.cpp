#include "dprlns/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "dprlns/bench.hpp"
#include "dprlns/csv.hpp"
#include "dprlns/error.hpp"
#include "dprlns/generator.hpp"
#include "dprlns/instance_io.hpp"
#include "dprlns/search.hpp"
#include "dprlns/weights.hpp"

namespace dprlns::cli {

namespace {

namespace fs = std::filesystem;

/// Configuration problems detected after parsing; exit code 2.
struct UsageError : Error {
  using Error::Error;
};

void require_file(const std::string& path, const char* what) {
  if (!fs::is_regular_file(path)) throw UsageError(std::string(what) + " not found: " + path);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

DestroyOperator operator_flag(const std::string& name) {
  try {
    return parse_operator(name);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

std::shared_ptr<const WeightBundle> bundle_for(const std::vector<DestroyOperator>& ops,
                                               const std::string& weights) {
  const bool neural = std::find(ops.begin(), ops.end(), DestroyOperator::DprNeural) != ops.end();
  if (!neural) return nullptr;
  if (weights.empty()) throw UsageError("--op dpr_neural requires --weights <bundle>");
  require_file(weights, "weight bundle");
  return std::make_shared<const WeightBundle>(load_bundle(weights));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("failed writing " + path);
}

struct SolveArgs {
  std::string instance;
  std::size_t prefix = 0;
  std::string op = "rand";
  std::size_t iters = 150;
  std::uint64_t seed = 0;
  std::size_t anchors = 0;
  std::string weights;
  std::string out;
  std::string trace;
};

int solve(const SolveArgs& a, std::ostream& out) {
  require_file(a.instance, "instance file");
  SearchConfig cfg;
  cfg.op = operator_flag(a.op);
  cfg.iterations = a.iters;
  cfg.seed = a.seed;
  if (a.anchors) cfg.n_anchors = a.anchors;
  const auto bundle = bundle_for({cfg.op}, a.weights);
  try {
    validate(cfg);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }

  const Instance inst = load_instance(a.instance, a.prefix ? std::optional(a.prefix) : std::nullopt);
  const SearchResult res = lns_run(inst, cfg, bundle);

  out << "instance " << inst.name() << '\n'
      << "customers " << inst.customer_count() << '\n'
      << "operator " << to_string(cfg.op) << '\n'
      << "initial_cost " << format_double(res.initial_cost) << '\n'
      << "cost " << format_double(res.best_cost) << '\n'
      << "vehicles " << res.best.routes.size() << '\n'
      << "runtime_s " << res.runtime_seconds << '\n';

  if (!a.out.empty()) write_file(a.out, serialize_solution(inst, res.best));
  if (!a.trace.empty()) {
    std::ostringstream csv;
    write_trace_csv(csv, res.trace);
    write_file(a.trace, csv.str());
  }
  return kExitOk;
}

struct BenchArgs {
  std::string manifest;
  std::string ops = "rand";
  std::string seeds = "1";
  std::uint64_t seed = 0;
  std::size_t iters = 150;
  std::size_t anchors = 0;
  std::string weights;
  std::string out;
  std::string runs;
};

std::vector<std::uint64_t> seed_list(const BenchArgs& a) {
  std::vector<std::uint64_t> seeds;
  try {
    if (a.seeds.find(',') == std::string::npos) {
      const auto count = std::stoull(a.seeds);
      if (count == 0) throw UsageError("--seeds must be positive");
      for (std::uint64_t s = 0; s < count; ++s) seeds.push_back(a.seed + s);
    } else {
      for (const auto& s : split(a.seeds, ',')) seeds.push_back(std::stoull(s));
    }
  } catch (const std::logic_error&) {
    throw UsageError("--seeds expects a count or a comma-separated list, got '" + a.seeds + "'");
  }
  return seeds;
}

int bench(const BenchArgs& a, std::ostream& out) {
  require_file(a.manifest, "manifest");
  BenchOptions opts;
  opts.ops.clear();
  for (const auto& name : split(a.ops, ',')) opts.ops.push_back(operator_flag(name));
  if (opts.ops.empty()) throw UsageError("--op needs at least one operator");
  opts.seeds = seed_list(a);
  opts.iterations = a.iters;
  if (opts.iterations < 1) throw UsageError("--iters must be >= 1");
  if (a.anchors) opts.n_anchors = a.anchors;
  opts.bundle = bundle_for(opts.ops, a.weights);
  opts.threads = default_thread_count();

  const auto entries = load_manifest(a.manifest);
  const BenchReport report = run_bench(entries, opts);
  write_bench_table(out, report);
  if (!a.out.empty()) {
    std::ostringstream csv;
    write_bench_csv(csv, report);
    write_file(a.out, csv.str());
  }
  if (!a.runs.empty()) {
    std::ostringstream csv;
    write_runs_csv(csv, report);
    write_file(a.runs, csv.str());
  }
  return report.failures.empty() ? kExitOk : kExitFailure;
}

struct GenerateArgs {
  std::size_t n = 25;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  double p_start = 0.3;
  std::string out;
};

int generate(const GenerateArgs& a, std::ostream& out) {
  GeneratorParams p;
  p.n_customers = a.n;
  p.p_start = a.p_start;
  if (p.n_customers < 1) throw UsageError("--n must be >= 1");
  if (!(p.p_start >= 0.0 && p.p_start <= 1.0)) throw UsageError("--p-start must lie in [0, 1]");
  for (const auto& path : generate_instances(p, a.count, a.seed, a.out)) out << path.string() << '\n';
  return kExitOk;
}

int traces(const std::vector<std::string>& files, const std::string& out_path, std::ostream& out) {
  std::vector<CsvTable> tables;
  for (const auto& f : files) {
    require_file(f, "trace file");
    std::ifstream in(f, std::ios::binary);
    tables.push_back(parse_csv(in));
  }
  const CsvTable agg = aggregate_traces(tables);
  std::ostringstream csv;
  CsvWriter writer(csv);
  for (const auto& row : agg) writer.row(row);
  if (out_path.empty()) {
    out << csv.str();
  } else {
    write_file(out_path, csv.str());
  }
  return kExitOk;
}

struct InitArgs {
  std::string out;
  long n_a = 128;
  long n_h = 0;
  std::size_t k = 10;
  std::uint64_t seed = 0;
};

int init_weights(const InitArgs& a, std::ostream& out) {
  if (a.n_a < 1 || a.n_h < 0 || a.k < 1) throw UsageError("--na, --nh and --k must be positive");
  const auto bundle = random_bundle(a.n_a, a.n_h ? a.n_h : a.n_a, a.k, a.seed);
  save_bundle(bundle, a.out);
  out << "wrote " << a.out << " (N_A=" << bundle.n_a << ", N_H=" << bundle.n_h << ", k=" << bundle.k << ")\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"LNS solver for CVRPTW with dynamic partial removal", "dprlns"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  solve_cmd->add_option("--instance", sa.instance, "Solomon or native instance file")->required();
  solve_cmd->add_option("--prefix", sa.prefix, "Keep only the first N customers");
  solve_cmd->add_option("--op", sa.op, "rand, alns, string, dpr_random or dpr_neural");
  solve_cmd->add_option("--iters", sa.iters, "LNS iterations");
  solve_cmd->add_option("--seed", sa.seed, "Random seed");
  solve_cmd->add_option("--anchors", sa.anchors, "Anchors per DPR iteration");
  solve_cmd->add_option("--weights", sa.weights, "HRGCN weight bundle (dpr_neural)");
  solve_cmd->add_option("--out", sa.out, "Write the best solution document here");
  solve_cmd->add_option("--trace", sa.trace, "Write the per-iteration trace CSV here");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark sweep from a manifest");
  bench_cmd->add_option("--manifest", ba.manifest, "Lines of '<scale> <path> [n_customers]'")->required();
  bench_cmd->add_option("--op,--ops", ba.ops, "Comma-separated operators");
  bench_cmd->add_option("--seeds", ba.seeds, "Seed count (from --seed) or comma-separated list");
  bench_cmd->add_option("--seed", ba.seed, "First seed when --seeds is a count");
  bench_cmd->add_option("--iters", ba.iters, "LNS iterations");
  bench_cmd->add_option("--anchors", ba.anchors, "Anchors per DPR iteration");
  bench_cmd->add_option("--weights", ba.weights, "HRGCN weight bundle (dpr_neural)");
  bench_cmd->add_option("--out", ba.out, "Write the summary CSV here");
  bench_cmd->add_option("--runs", ba.runs, "Write the per-run CSV here");

  GenerateArgs ga;
  auto* gen_cmd = app.add_subcommand("generate", "Generate synthetic instances");
  gen_cmd->add_option("--n", ga.n, "Customers per instance");
  gen_cmd->add_option("--count", ga.count, "Number of instances");
  gen_cmd->add_option("--seed", ga.seed, "Master seed");
  gen_cmd->add_option("--p-start", ga.p_start, "Probability of an unconstrained window");
  gen_cmd->add_option("--out", ga.out, "Output directory")->required();

  std::vector<std::string> trace_files;
  std::string trace_out;
  auto* traces_cmd = app.add_subcommand("traces", "Average trace CSVs per iteration");
  traces_cmd->add_option("files", trace_files, "Trace CSV files")->required();
  traces_cmd->add_option("--out", trace_out, "Output CSV (default stdout)");

  InitArgs ia;
  auto* init_cmd = app.add_subcommand("init-weights", "Write an untrained HRGCN weight bundle");
  init_cmd->add_option("--out", ia.out, "Bundle path")->required();
  init_cmd->add_option("--na", ia.n_a, "Node embedding width N_A");
  init_cmd->add_option("--nh", ia.n_h, "GRU hidden width (default N_A)");
  init_cmd->add_option("--k", ia.k, "k-NN arcs per node");
  init_cmd->add_option("--seed", ia.seed, "Random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return solve(sa, out);
    if (bench_cmd->parsed()) return bench(ba, out);
    if (gen_cmd->parsed()) return generate(ga, out);
    if (traces_cmd->parsed()) return traces(trace_files, trace_out, out);
    if (init_cmd->parsed()) return init_weights(ia, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace dprlns::cli
