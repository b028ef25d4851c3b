#include "dprlns/repair.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dprlns/error.hpp"
#include "dprlns/schedule.hpp"

namespace dprlns {

double snap_delta(double delta) noexcept {
  return std::round(delta / kDeltaSnap) * kDeltaSnap;
}

Placement best_insertion(const Instance& instance, const Solution& solution, NodeId c) {
  if (std::find(solution.pool.begin(), solution.pool.end(), c) == solution.pool.end()) {
    throw InvalidArgument("best_insertion: customer " + std::to_string(c) + " is not in the pool");
  }
  const Node& node = instance.node(c);
  const NodeId single[] = {c};
  if (!route_feasible(instance, single)) {
    throw InfeasibleCustomer(c, "a dedicated route violates capacity or time windows");
  }

  std::optional<Placement> best;
  std::vector<NodeId> trial;
  for (std::size_t r = 0; r < solution.routes.size(); ++r) {
    const auto& route = solution.routes[r].customers;
    double load = node.demand;
    for (NodeId v : route) load += instance.node(v).demand;
    if (load > instance.capacity()) continue;

    for (std::size_t pos = 0; pos <= route.size(); ++pos) {
      const NodeId prev = pos == 0 ? kDepot : route[pos - 1];
      const NodeId next = pos == route.size() ? kDepot : route[pos];
      const double delta = snap_delta(instance.distance(prev, c) + instance.distance(c, next) -
                                      instance.distance(prev, next));
      // Scan order already encodes the tie-break, so only strict gains matter.
      if (best && !(delta < best->delta)) continue;
      trial.assign(route.begin(), route.end());
      trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(pos), c);
      if (route_feasible(instance, trial)) best = Placement{r, pos, delta};
    }
  }

  const double fresh = snap_delta(2.0 * instance.distance(kDepot, c));
  if (!best || fresh < best->delta) best = Placement{std::nullopt, 0, fresh};
  return *best;
}

void apply_placement(Solution& solution, const Placement& where, NodeId c) {
  auto it = std::find(solution.pool.begin(), solution.pool.end(), c);
  if (it == solution.pool.end()) {
    throw InvalidArgument("apply_placement: customer " + std::to_string(c) + " is not in the pool");
  }
  solution.pool.erase(it);
  if (where.new_route()) {
    solution.routes.push_back(Route{{c}});
    return;
  }
  auto& route = solution.routes.at(*where.route).customers;
  route.insert(route.begin() + static_cast<std::ptrdiff_t>(where.position), c);
}

Solution least_cost_repair(const Instance& instance, Solution solution, Rng& rng) {
  std::vector<NodeId> order = solution.pool;
  std::shuffle(order.begin(), order.end(), rng);
  for (NodeId c : order) {
    apply_placement(solution, best_insertion(instance, solution, c), c);
  }
  return solution;
}

}  // namespace dprlns
