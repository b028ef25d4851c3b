#ifndef DPRLNS_BENCH_HPP_
#define DPRLNS_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dprlns/csv.hpp"
#include "dprlns/generator.hpp"
#include "dprlns/search.hpp"
#include "dprlns/weights.hpp"

namespace dprlns {

/// One manifest line: `<scale-label> <path> [n_customers]`. Relative paths
/// resolve against the manifest's directory; '#' starts a comment.
struct ManifestEntry {
  std::string scale;
  std::filesystem::path path;
  std::optional<std::size_t> prefix;
};

std::vector<ManifestEntry> parse_manifest(const std::string& text,
                                          const std::filesystem::path& base_dir);
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

struct BenchOptions {
  std::vector<DestroyOperator> ops{DestroyOperator::Rand};
  std::vector<std::uint64_t> seeds{0};
  std::size_t iterations = 150;
  std::optional<std::size_t> n_anchors;
  std::shared_ptr<const WeightBundle> bundle;  // dpr_neural only
  std::size_t threads = 1;
};

struct BenchRun {
  std::string scale;
  std::string instance;
  DestroyOperator op = DestroyOperator::Rand;
  std::uint64_t seed = 0;
  double initial_cost = 0.0;
  double best_cost = 0.0;
  double runtime_seconds = 0.0;
};

struct BenchCell {
  std::string scale;
  DestroyOperator op = DestroyOperator::Rand;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single run
  std::size_t runs = 0;
};

struct BenchGroupFailure {
  std::string scale;
  std::string message;
};

struct BenchReport {
  std::vector<BenchRun> runs;
  std::vector<BenchCell> cells;
  std::vector<BenchGroupFailure> failures;
};

/// Every (entry, op, seed) run; a failing run drops its whole scale group
/// from `cells` and records a failure instead.
BenchReport run_bench(const std::vector<ManifestEntry>& entries, const BenchOptions& options);

/// Worker count from DPRLNS_THREADS, else hardware concurrency (>= 1).
std::size_t default_thread_count();

void write_bench_table(std::ostream& out, const BenchReport& report);
void write_bench_csv(std::ostream& out, const BenchReport& report);
void write_runs_csv(std::ostream& out, const BenchReport& report);

/// Writes `count` native instance files named synthetic_<n>_<index>.json.
/// Instance i uses a seed derived from `master_seed` and i.
std::vector<std::filesystem::path> generate_instances(const GeneratorParams& params, std::size_t count,
                                                      std::uint64_t master_seed,
                                                      const std::filesystem::path& out_dir);

/// Column-wise means over trace tables sharing the trace header.
/// Throws InvalidArgument on ragged lengths or a foreign header.
CsvTable aggregate_traces(const std::vector<CsvTable>& traces);

inline constexpr const char* kAggregateHeader = "iter,mean_cost,mean_best,mean_coeff";

}  // namespace dprlns

#endif  // DPRLNS_BENCH_HPP_
