#include "dprlns/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "dprlns/csv.hpp"
#include "dprlns/destroy.hpp"
#include "dprlns/error.hpp"
#include "dprlns/schedule.hpp"

namespace dprlns {

std::string_view to_string(DestroyOperator op) noexcept {
  switch (op) {
    case DestroyOperator::Rand: return "rand";
    case DestroyOperator::AlnsLite: return "alns";
    case DestroyOperator::String: return "string";
    case DestroyOperator::DprRandom: return "dpr_random";
    case DestroyOperator::DprNeural: return "dpr_neural";
  }
  return "unknown";
}

DestroyOperator parse_operator(std::string_view name) {
  if (name == "rand") return DestroyOperator::Rand;
  if (name == "alns" || name == "alns_lite") return DestroyOperator::AlnsLite;
  if (name == "string") return DestroyOperator::String;
  if (name == "dpr_random") return DestroyOperator::DprRandom;
  if (name == "dpr_neural") return DestroyOperator::DprNeural;
  throw InvalidArgument("unknown operator '" + std::string(name) + "'");
}

void validate(const SearchConfig& config) {
  if (config.iterations < 1) throw InvalidArgument("search: iterations must be >= 1");
  if (!(config.t_final > 0.0) || !(config.t_initial >= config.t_final)) {
    throw InvalidArgument("search: temperatures must satisfy t_initial >= t_final > 0");
  }
  if (config.n_anchors && *config.n_anchors < 1) {
    throw InvalidArgument("search: n_anchors must be >= 1");
  }
}

Solution initial_solution(const Instance& instance, Rng& rng) {
  return least_cost_repair(instance, empty_solution(instance), rng);
}

std::size_t degree_of_destruction(std::size_t n_customers, bool multi_anchor) {
  if (n_customers < 1) throw InvalidArgument("degree_of_destruction: need at least one customer");
  const double base = std::sqrt(static_cast<double>(n_customers)) * (multi_anchor ? 1.2 : 1.0);
  const auto n = static_cast<std::size_t>(std::llround(base));
  return std::clamp<std::size_t>(n, 1, n_customers);
}

bool sa_accept(double c_new, double c_cur, double temperature, Rng& rng) {
  if (!(temperature > 0.0)) throw InvalidArgument("sa_accept: temperature must be positive");
  if (c_new <= c_cur) return true;
  const double p = std::exp(-(c_new - c_cur) / temperature);
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

double temperature_at(std::size_t k, std::size_t iterations, double t_initial, double t_final) {
  if (iterations <= 1) return t_initial;
  const double frac = static_cast<double>(k) / static_cast<double>(iterations - 1);
  return t_initial * std::pow(t_final / t_initial, frac);
}

namespace {

constexpr double kImprovementTol = 1e-9;

enum AlnsOp : std::size_t { kAlnsRandom = 0, kAlnsString, kAlnsProximity, kAlnsCount };

struct Step {
  DestroyResult destroyed;
  std::optional<double> mean_coeff;
  std::vector<NodeId> anchors;
  std::size_t alns_op = 0;
};

}  // namespace

SearchResult lns_run(const Instance& instance, const SearchConfig& config,
                     std::shared_ptr<const WeightBundle> bundle, const IterationObserver& observer) {
  validate(config);
  const auto started = std::chrono::steady_clock::now();

  std::unique_ptr<Policy> policy;
  std::size_t anchors = 1;
  if (config.op == DestroyOperator::DprNeural) {
    if (!bundle) {
      if (config.weights_path.empty()) throw InvalidArgument("search: dpr_neural needs a weight bundle");
      bundle = std::make_shared<const WeightBundle>(load_bundle(config.weights_path));
    }
    anchors = config.n_anchors.value_or(bundle->n_a > 128 ? 3 : 2);
    policy = std::make_unique<NeuralPolicy>(bundle);
  } else if (config.op == DestroyOperator::DprRandom) {
    anchors = config.n_anchors.value_or(1);
    policy = std::make_unique<RandomPolicy>();
  }
  const std::size_t n = instance.customer_count();
  anchors = std::min(anchors, n);
  const std::size_t n_destroy = degree_of_destruction(n, anchors > 1);

  std::seed_seq init_seq{config.seed, std::uint64_t{0}};
  std::seed_seq search_seq{config.seed, std::uint64_t{1}};
  Rng init_rng(init_seq);
  Rng rng(search_seq);

  SearchResult result;
  Solution current = initial_solution(instance, init_rng);
  double current_cost = solution_cost(instance, current);
  result.best = current;
  result.best_cost = current_cost;
  result.initial_cost = current_cost;

  std::vector<double> alns_weights(kAlnsCount, 1.0);

  for (std::size_t k = 0; k < config.iterations; ++k) {
    const double temperature = temperature_at(k, config.iterations, config.t_initial, config.t_final);
    Step step;
    switch (config.op) {
      case DestroyOperator::Rand:
        step.destroyed = random_destroy(instance, current, n_destroy, rng);
        break;
      case DestroyOperator::String:
        step.destroyed = string_destroy(instance, current, n_destroy, rng);
        break;
      case DestroyOperator::AlnsLite:
        step.alns_op = adaptive_select(alns_weights, rng);
        step.destroyed = step.alns_op == kAlnsRandom   ? random_destroy(instance, current, n_destroy, rng)
                         : step.alns_op == kAlnsString ? string_destroy(instance, current, n_destroy, rng)
                                                       : proximity_destroy(instance, current, n_destroy, rng);
        break;
      case DestroyOperator::DprRandom:
      case DestroyOperator::DprNeural: {
        const PolicyOutput out = policy->evaluate(instance, current);
        step.anchors = sample_anchors(out, anchors, rng);
        policy->commit(step.anchors);
        DprRequest request{step.anchors, sample_coefficients(out, rng), n_destroy};
        const double sum = std::accumulate(request.coefficients.begin(), request.coefficients.end(), 0.0);
        step.mean_coeff = sum / static_cast<double>(n);
        step.destroyed = dpr_destroy(instance, current, request);
        break;
      }
    }

    Solution candidate = least_cost_repair(instance, std::move(step.destroyed.solution), rng);
    const double candidate_cost = solution_cost(instance, candidate);
    const bool accepted = sa_accept(candidate_cost, current_cost, temperature, rng);

    Outcome outcome = Outcome::Rejected;
    if (accepted) {
      outcome = candidate_cost < current_cost - kImprovementTol ? Outcome::AcceptedImproving
                                                               : Outcome::AcceptedWorse;
      current = std::move(candidate);
      current_cost = candidate_cost;
      if (current_cost < result.best_cost - kImprovementTol) {
        result.best = current;
        result.best_cost = current_cost;
        outcome = Outcome::NewGlobalBest;
      }
    }
    if (config.op == DestroyOperator::AlnsLite) update_weights(alns_weights, step.alns_op, outcome);

    result.trace.push_back(TraceRow{k, current_cost, result.best_cost, accepted, temperature,
                                    step.mean_coeff, std::move(step.anchors)});
    if (observer) observer(result.trace.back(), current);
  }
  if (const auto* neural = dynamic_cast<const NeuralPolicy*>(policy.get())) result.policy_steps = neural->steps();

  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

void write_trace_csv(std::ostream& out, const SearchTrace& trace) {
  CsvWriter csv(out);
  csv.row({"iter", "cost", "best", "accepted", "temperature", "mean_coeff", "anchors"});
  for (const auto& r : trace) {
    std::string anchors;
    for (std::size_t i = 0; i < r.anchors.size(); ++i) {
      anchors += (i ? ";" : "") + std::to_string(r.anchors[i]);
    }
    csv.row({std::to_string(r.iter), format_double(r.cost), format_double(r.best),
             r.accepted ? "1" : "0", format_double(r.temperature),
             r.mean_coeff ? format_double(*r.mean_coeff) : std::string{}, anchors});
  }
}

}  // namespace dprlns
