#include "dprlns/destroy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dprlns/error.hpp"

namespace dprlns {

namespace {

std::size_t routed_count(const Solution& s) {
  std::size_t n = 0;
  for (const auto& r : s.routes) n += r.customers.size();
  return n;
}

void check_budget(const Solution& s, std::size_t n, const char* who) {
  if (n > routed_count(s)) {
    throw InvalidArgument(std::string(who) + ": cannot remove " + std::to_string(n) +
                          " of " + std::to_string(routed_count(s)) + " routed customers");
  }
}

/// Removal bookkeeping shared by the operators: nodes are marked, the
/// solution is rebuilt once at the end.
class Wrecker {
public:
  Wrecker(const Instance& instance, const Solution& solution)
    : instance_(instance), solution_(solution), removed_mask_(instance.node_count(), 0),
      where_(route_index(instance, solution)) {}

  bool removed(NodeId id) const { return removed_mask_[static_cast<std::size_t>(id)] != 0; }
  int route_of(NodeId id) const { return where_[static_cast<std::size_t>(id)]; }
  std::size_t count() const { return order_.size(); }

  /// Customers of route `r` that are still in place.
  std::vector<NodeId> remaining(std::size_t r) const {
    std::vector<NodeId> out;
    for (NodeId c : solution_.routes[r].customers) {
      if (!removed(c)) out.push_back(c);
    }
    return out;
  }

  void remove(NodeId id) {
    removed_mask_[static_cast<std::size_t>(id)] = 1;
    order_.push_back(id);
  }

  /// Contiguous block of `take` nodes of `route` that contains `route[at]`,
  /// grown successor-first, alternating sides.
  static std::vector<NodeId> grow_segment(const std::vector<NodeId>& route, std::size_t at,
                                          std::size_t take) {
    std::vector<NodeId> seg{route[at]};
    std::size_t lo = at;
    std::size_t hi = at;
    bool succ_turn = true;
    while (seg.size() < take) {
      const bool can_succ = hi + 1 < route.size();
      const bool can_pred = lo > 0;
      if (!can_succ && !can_pred) break;
      if ((succ_turn && can_succ) || !can_pred) {
        seg.push_back(route[++hi]);
      } else {
        seg.push_back(route[--lo]);
      }
      succ_turn = !succ_turn;
    }
    return seg;
  }

  DestroyResult finish(std::vector<DprStep> steps = {}) && {
    DestroyResult result;
    result.solution = remove_customers(instance_, solution_, order_);
    result.removed = std::move(order_);
    result.steps = std::move(steps);
    return result;
  }

private:
  const Instance& instance_;
  const Solution& solution_;
  std::vector<char> removed_mask_;
  std::vector<int> where_;
  std::vector<NodeId> order_;
};

std::vector<NodeId> routed_customers(const Solution& s) {
  std::vector<NodeId> out;
  for (const auto& r : s.routes) out.insert(out.end(), r.customers.begin(), r.customers.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::size_t dpr_quota(double coefficient, std::size_t route_size) noexcept {
  const auto q = static_cast<std::size_t>(std::floor(coefficient * static_cast<double>(route_size) + 0.5));
  return std::max<std::size_t>(1, q);
}

DestroyResult dpr_destroy(const Instance& instance, const Solution& solution,
                          const DprRequest& request) {
  if (!solution.complete()) throw IncompleteSolution("dpr_destroy: solution has pooled customers");
  if (request.anchors.empty()) throw InvalidArgument("dpr_destroy: no anchors");
  if (request.n_destroy < 1 || request.n_destroy > instance.customer_count()) {
    throw InvalidArgument("dpr_destroy: n_destroy must lie in [1, N]");
  }
  if (request.coefficients.size() != instance.node_count()) {
    throw InvalidArgument("dpr_destroy: one coefficient per node id is required");
  }
  for (std::size_t i = 1; i < request.coefficients.size(); ++i) {
    const double c = request.coefficients[i];
    if (!(c >= 0.0 && c <= 1.0)) {
      throw InvalidArgument("dpr_destroy: coefficient of node " + std::to_string(i) +
                            " outside [0, 1]");
    }
  }

  Wrecker wreck(instance, solution);
  for (NodeId a : request.anchors) {
    if (!instance.is_customer(a) || wreck.route_of(a) < 0) {
      throw InvalidArgument("dpr_destroy: anchor " + std::to_string(a) + " is not routed");
    }
  }

  const std::size_t budget = std::min(request.n_destroy, routed_count(solution));
  std::vector<DprStep> steps;
  for (NodeId anchor : request.anchors) {
    if (wreck.count() >= budget) break;
    for (NodeId i : instance.neighbors(anchor)) {
      if (wreck.count() >= budget) break;
      DprStep step{anchor, i, false, 0, 0, {}};
      if (wreck.removed(i)) {
        step.skipped = true;
        steps.push_back(std::move(step));
        continue;
      }
      const auto r = static_cast<std::size_t>(wreck.route_of(i));
      const auto remaining = wreck.remaining(r);
      const auto at = static_cast<std::size_t>(
          std::find(remaining.begin(), remaining.end(), i) - remaining.begin());
      step.route_size = remaining.size();
      step.quota = dpr_quota(request.coefficients[static_cast<std::size_t>(i)], remaining.size());
      const std::size_t take = std::min(step.quota, budget - wreck.count());
      step.removed = Wrecker::grow_segment(remaining, at, take);
      for (NodeId v : step.removed) wreck.remove(v);
      steps.push_back(std::move(step));
    }
  }
  return std::move(wreck).finish(std::move(steps));
}

DestroyResult random_destroy(const Instance& instance, const Solution& solution,
                             std::size_t n, Rng& rng) {
  check_budget(solution, n, "random_destroy");
  auto candidates = routed_customers(solution);
  Wrecker wreck(instance, solution);
  // Partial Fisher-Yates: the first n slots become the sample, in draw order.
  for (std::size_t k = 0; k < n; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, candidates.size() - 1);
    std::swap(candidates[k], candidates[pick(rng)]);
    wreck.remove(candidates[k]);
  }
  return std::move(wreck).finish();
}

DestroyResult string_destroy(const Instance& instance, const Solution& solution,
                             std::size_t n, Rng& rng) {
  check_budget(solution, n, "string_destroy");
  Wrecker wreck(instance, solution);
  if (n == 0) return std::move(wreck).finish();

  const auto candidates = routed_customers(solution);
  const NodeId seed =
      candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];

  struct Cut {
    std::size_t route;
    std::size_t lo;
    std::size_t hi;  // inclusive
  };
  std::vector<Cut> cuts;
  std::vector<char> touched(solution.routes.size(), 0);
  // The seed leads its own neighbour list, so its route is cut first.
  for (NodeId v : instance.neighbors(seed)) {
    if (wreck.count() >= n) break;
    const int r = wreck.route_of(v);
    if (r < 0 || touched[static_cast<std::size_t>(r)]) continue;
    touched[static_cast<std::size_t>(r)] = 1;

    // Untouched routes are still whole.
    const auto& route = solution.routes[static_cast<std::size_t>(r)].customers;
    const auto at = static_cast<std::size_t>(std::find(route.begin(), route.end(), v) - route.begin());
    std::size_t len = std::uniform_int_distribution<std::size_t>(1, route.size())(rng);
    len = std::min(len, n - wreck.count());
    // String start chosen uniformly among the windows that contain v.
    const std::size_t lo = at + 1 >= len ? at + 1 - len : 0;
    const std::size_t hi = std::min(at, route.size() - len);
    const std::size_t start = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    for (std::size_t k = start; k < start + len; ++k) wreck.remove(route[k]);
    cuts.push_back({static_cast<std::size_t>(r), start, start + len - 1});
  }
  // Every route is cut once and the budget is still open: lengthen the
  // strings one customer at a time, round-robin in cut order.
  while (wreck.count() < n) {
    for (auto& cut : cuts) {
      if (wreck.count() >= n) break;
      const auto& route = solution.routes[cut.route].customers;
      if (cut.hi + 1 < route.size()) {
        wreck.remove(route[++cut.hi]);
      } else if (cut.lo > 0) {
        wreck.remove(route[--cut.lo]);
      }
    }
  }
  return std::move(wreck).finish();
}

DestroyResult proximity_destroy(const Instance& instance, const Solution& solution,
                                std::size_t n, Rng& rng) {
  check_budget(solution, n, "proximity_destroy");
  Wrecker wreck(instance, solution);
  if (n == 0) return std::move(wreck).finish();
  const auto candidates = routed_customers(solution);
  const NodeId seed =
      candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
  for (NodeId v : instance.neighbors(seed)) {
    if (wreck.count() >= n) break;
    if (wreck.route_of(v) >= 0) wreck.remove(v);
  }
  return std::move(wreck).finish();
}

std::size_t adaptive_select(std::span<const double> weights, Rng& rng) {
  if (weights.empty()) throw InvalidArgument("adaptive_select: empty operator set");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw InvalidArgument("adaptive_select: weights must have positive mass");
  double u = std::uniform_real_distribution<double>(0.0, total)(rng);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    if (u < weights[k]) return k;
    u -= weights[k];
  }
  // Rounding left u at the top edge; return the last positive weight.
  for (std::size_t k = weights.size(); k-- > 0;) {
    if (weights[k] > 0.0) return k;
  }
  return 0;
}

void update_weights(std::span<double> weights, std::size_t op, Outcome outcome,
                    const AdaptiveParams& params) {
  if (op >= weights.size()) throw InvalidArgument("update_weights: operator index out of range");
  double score = 0.0;
  switch (outcome) {
    case Outcome::NewGlobalBest: score = params.score_best; break;
    case Outcome::AcceptedImproving: score = params.score_improving; break;
    case Outcome::AcceptedWorse: score = params.score_accepted; break;
    case Outcome::Rejected: score = 0.0; break;
  }
  weights[op] = (1.0 - params.reaction) * weights[op] + params.reaction * score;
}

}  // namespace dprlns
