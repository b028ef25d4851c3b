#include "dprlns/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "dprlns/error.hpp"
#include "dprlns/instance_io.hpp"

namespace dprlns {

std::vector<ManifestEntry> parse_manifest(const std::string& text,
                                          const std::filesystem::path& base_dir) {
  std::vector<ManifestEntry> entries;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() < 2 || tok.size() > 3) {
      throw ParseError(lineno, "manifest lines are '<scale> <path> [n_customers]'");
    }
    ManifestEntry e{tok[0], tok[1], std::nullopt};
    if (e.path.is_relative()) e.path = base_dir / e.path;
    if (tok.size() == 3) {
      try {
        e.prefix = static_cast<std::size_t>(std::stoul(tok[2]));
      } catch (const std::exception&) {
        throw ParseError(lineno, "customer count '" + tok[2] + "' is not a number");
      }
    }
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw ParseError(lineno, "manifest lists no instances");
  return entries;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path());
}

std::size_t default_thread_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DPRLNS_THREADS")) {
    try {
      n = std::max<std::size_t>(1, std::stoul(env));
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("DPRLNS_THREADS is not a number: ") + env);
    }
  }
  return n;
}

BenchReport run_bench(const std::vector<ManifestEntry>& entries, const BenchOptions& options) {
  if (options.ops.empty()) throw InvalidArgument("bench: no operators");
  if (options.seeds.empty()) throw InvalidArgument("bench: no seeds");

  struct Job {
    std::size_t entry;
    DestroyOperator op;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    for (auto op : options.ops) {
      for (auto seed : options.seeds) jobs.push_back({e, op, seed});
    }
  }

  // Instances are loaded once up front; a load failure fails its group.
  std::vector<std::shared_ptr<const Instance>> instances(entries.size());
  std::map<std::string, std::string> failed;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    try {
      instances[e] = std::make_shared<const Instance>(load_instance(entries[e].path, entries[e].prefix));
    } catch (const std::exception& ex) {
      failed.emplace(entries[e].scale, entries[e].path.string() + ": " + ex.what());
    }
  }

  std::vector<std::optional<BenchRun>> results(jobs.size());
  std::mutex failure_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Job& job = jobs[j];
      const auto& entry = entries[job.entry];
      if (!instances[job.entry]) continue;
      {
        std::lock_guard lock(failure_mutex);
        if (failed.count(entry.scale)) continue;
      }
      try {
        SearchConfig cfg;
        cfg.iterations = options.iterations;
        cfg.op = job.op;
        cfg.seed = job.seed;
        cfg.n_anchors = options.n_anchors;
        const auto res = lns_run(*instances[job.entry], cfg, options.bundle);
        results[j] = BenchRun{entry.scale, instances[job.entry]->name(), job.op, job.seed,
                              res.initial_cost, res.best_cost, res.runtime_seconds};
      } catch (const std::exception& ex) {
        std::lock_guard lock(failure_mutex);
        failed.emplace(entry.scale, entry.path.string() + " (" + std::string(to_string(job.op)) +
                                        ", seed " + std::to_string(job.seed) + "): " + ex.what());
      }
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(1, jobs.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }

  BenchReport report;
  for (const auto& [scale, message] : failed) report.failures.push_back({scale, message});

  // Cells in manifest order of first appearance, then operator order.
  std::vector<std::string> scales;
  for (const auto& e : entries) {
    if (std::find(scales.begin(), scales.end(), e.scale) == scales.end()) scales.push_back(e.scale);
  }
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (results[j] && !failed.count(results[j]->scale)) report.runs.push_back(*results[j]);
  }
  for (const auto& scale : scales) {
    if (failed.count(scale)) continue;
    for (auto op : options.ops) {
      std::vector<double> costs;
      for (const auto& r : report.runs) {
        if (r.scale == scale && r.op == op) costs.push_back(r.best_cost);
      }
      if (costs.empty()) continue;
      BenchCell cell{scale, op, 0.0, 0.0, costs.size()};
      for (double c : costs) cell.mean += c;
      cell.mean /= static_cast<double>(costs.size());
      if (costs.size() > 1) {
        double ss = 0.0;
        for (double c : costs) ss += (c - cell.mean) * (c - cell.mean);
        cell.stddev = std::sqrt(ss / static_cast<double>(costs.size() - 1));
      }
      report.cells.push_back(cell);
    }
  }
  return report;
}

void write_bench_table(std::ostream& out, const BenchReport& report) {
  std::vector<std::string> scales;
  std::vector<DestroyOperator> ops;
  for (const auto& c : report.cells) {
    if (std::find(scales.begin(), scales.end(), c.scale) == scales.end()) scales.push_back(c.scale);
    if (std::find(ops.begin(), ops.end(), c.op) == ops.end()) ops.push_back(c.op);
  }
  std::size_t label_w = 5;
  for (const auto& s : scales) label_w = std::max(label_w, s.size());
  constexpr int kCol = 22;

  out << std::left << std::setw(static_cast<int>(label_w) + 2) << "scale";
  for (auto op : ops) out << std::right << std::setw(kCol) << std::string(to_string(op));
  out << '\n';
  for (const auto& s : scales) {
    out << std::left << std::setw(static_cast<int>(label_w) + 2) << s;
    for (auto op : ops) {
      auto it = std::find_if(report.cells.begin(), report.cells.end(),
                             [&](const BenchCell& c) { return c.scale == s && c.op == op; });
      std::ostringstream cell;
      if (it != report.cells.end()) {
        cell << std::fixed << std::setprecision(2) << it->mean << " +- " << it->stddev;
      }
      out << std::right << std::setw(kCol) << cell.str();
    }
    out << '\n';
  }
  for (const auto& f : report.failures) out << "FAILED " << f.scale << ": " << f.message << '\n';
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  CsvWriter csv(out);
  csv.row({"scale", "op", "mean", "stddev", "runs"});
  for (const auto& c : report.cells) {
    csv.row({c.scale, std::string(to_string(c.op)), format_double(c.mean), format_double(c.stddev),
             std::to_string(c.runs)});
  }
}

void write_runs_csv(std::ostream& out, const BenchReport& report) {
  CsvWriter csv(out);
  csv.row({"scale", "instance", "op", "seed", "initial_cost", "best_cost", "runtime_s"});
  for (const auto& r : report.runs) {
    csv.row({r.scale, r.instance, std::string(to_string(r.op)), std::to_string(r.seed),
             format_double(r.initial_cost), format_double(r.best_cost), format_double(r.runtime_seconds)});
  }
}

std::vector<std::filesystem::path> generate_instances(const GeneratorParams& params, std::size_t count,
                                                      std::uint64_t master_seed,
                                                      const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create directory " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  for (std::size_t i = 0; i < count; ++i) {
    std::seed_seq seq{master_seed, static_cast<std::uint64_t>(i)};
    GeneratorParams p = params;
    p.seed = std::mt19937_64(seq)();
    const Instance inst = generate_synthetic(p);

    std::ostringstream name;
    name << "synthetic_" << params.n_customers << "_" << std::setw(4) << std::setfill('0') << i << ".json";
    const auto path = out_dir / name.str();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << serialize_instance(inst);
    if (!out) throw Error("failed writing " + path.string());
    written.push_back(path);
  }
  return written;
}

namespace {

double parse_number(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidArgument(std::string("trace: bad ") + what + " value '" + s + "'");
}

}  // namespace

CsvTable aggregate_traces(const std::vector<CsvTable>& traces) {
  if (traces.empty()) throw InvalidArgument("traces: need at least one trace");
  const std::vector<std::string> header{"iter", "cost", "best", "accepted", "temperature", "mean_coeff", "anchors"};
  const std::size_t rows = traces.front().size();
  for (const auto& t : traces) {
    if (t.empty() || t.front() != header) throw InvalidArgument("traces: unexpected trace header");
    if (t.size() != rows) throw InvalidArgument("traces: ragged trace lengths");
  }

  CsvTable out{{"iter", "mean_cost", "mean_best", "mean_coeff"}};
  const double n = static_cast<double>(traces.size());
  for (std::size_t r = 1; r < rows; ++r) {
    double cost = 0.0;
    double best = 0.0;
    double coeff = 0.0;
    std::size_t coeff_count = 0;
    for (const auto& t : traces) {
      const auto& row = t[r];
      if (row.size() != header.size()) throw InvalidArgument("traces: malformed row " + std::to_string(r));
      if (row[0] != traces.front()[r][0]) throw InvalidArgument("traces: iteration indices disagree");
      cost += parse_number(row[1], "cost");
      best += parse_number(row[2], "best");
      if (!row[5].empty()) {
        coeff += parse_number(row[5], "mean_coeff");
        ++coeff_count;
      }
    }
    out.push_back({traces.front()[r][0], format_double(cost / n), format_double(best / n),
                   coeff_count ? format_double(coeff / static_cast<double>(coeff_count)) : std::string{}});
  }
  return out;
}

}  // namespace dprlns
