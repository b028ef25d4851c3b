#ifndef DPRLNS_SEARCH_HPP_
#define DPRLNS_SEARCH_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dprlns/instance.hpp"
#include "dprlns/policy.hpp"
#include "dprlns/repair.hpp"
#include "dprlns/solution.hpp"
#include "dprlns/weights.hpp"

namespace dprlns {

enum class DestroyOperator { Rand, AlnsLite, String, DprRandom, DprNeural };

std::string_view to_string(DestroyOperator op) noexcept;
/// Accepts rand, alns (or alns_lite), string, dpr_random, dpr_neural.
DestroyOperator parse_operator(std::string_view name);

struct SearchConfig {
  std::size_t iterations = 150;
  double t_initial = 100.0;
  double t_final = 1.0;
  /// Unset picks the operator default: 1 for dpr_random, 2 for dpr_neural
  /// (3 for bundles wider than N_A = 128).
  std::optional<std::size_t> n_anchors;
  DestroyOperator op = DestroyOperator::Rand;
  /// Seeds both the initial solution and the search. Runs that share a seed
  /// share their initial solution whatever the operator.
  std::uint64_t seed = 0;
  std::string weights_path;  // dpr_neural only
};

void validate(const SearchConfig& config);

struct TraceRow {
  std::size_t iter = 0;
  double cost = 0.0;  // current solution after the acceptance decision
  double best = 0.0;
  bool accepted = false;
  double temperature = 0.0;
  std::optional<double> mean_coeff;  // DPR operators only
  std::vector<NodeId> anchors;
};

using SearchTrace = std::vector<TraceRow>;

struct SearchResult {
  Solution best;
  double best_cost = 0.0;
  double initial_cost = 0.0;
  SearchTrace trace;
  double runtime_seconds = 0.0;
  std::size_t policy_steps = 0;  // recurrent-state updates (dpr_neural)
};

/// Called after every acceptance decision with the trace row and the current solution.
using IterationObserver = std::function<void(const TraceRow&, const Solution&)>;

/// Empty solution repaired by cheapest insertion.
Solution initial_solution(const Instance& instance, Rng& rng);

/// round(sqrt(N)) for one anchor, round(1.2 sqrt(N)) for several; at least 1.
std::size_t degree_of_destruction(std::size_t n_customers, bool multi_anchor);

/// Metropolis rule: always accept c_new <= c_cur, else with exp(-(c_new - c_cur) / T).
bool sa_accept(double c_new, double c_cur, double temperature, Rng& rng);

/// Geometric schedule T_k = T0 (Tf / T0)^(k / (K - 1)); T0 when K = 1.
double temperature_at(std::size_t k, std::size_t iterations, double t_initial, double t_final);

/// Runs the LNS. For dpr_neural the bundle comes from `bundle` if given,
/// otherwise from config.weights_path.
SearchResult lns_run(const Instance& instance, const SearchConfig& config,
                     std::shared_ptr<const WeightBundle> bundle = nullptr,
                     const IterationObserver& observer = {});

inline constexpr const char* kTraceHeader = "iter,cost,best,accepted,temperature,mean_coeff,anchors";

/// One row per iteration; anchors are ';'-separated ids.
void write_trace_csv(std::ostream& out, const SearchTrace& trace);

}  // namespace dprlns

#endif  // DPRLNS_SEARCH_HPP_
