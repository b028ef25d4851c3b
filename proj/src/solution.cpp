#include "dprlns/solution.hpp"

#include <algorithm>
#include <numeric>

#include "dprlns/error.hpp"

namespace dprlns {

Solution empty_solution(const Instance& instance) {
  Solution s;
  s.pool.resize(instance.customer_count());
  std::iota(s.pool.begin(), s.pool.end(), 1);
  return s;
}

double route_cost(const Instance& instance, std::span<const NodeId> route) {
  if (route.empty()) return 0.0;
  double cost = instance.distance(kDepot, route.front());
  for (std::size_t k = 1; k < route.size(); ++k) {
    cost += instance.distance(route[k - 1], route[k]);
  }
  return cost + instance.distance(route.back(), kDepot);
}

double solution_cost(const Instance& instance, const Solution& solution) {
  if (!solution.complete()) {
    throw IncompleteSolution("solution_cost: " + std::to_string(solution.pool.size()) +
                             " customers are still in the pool");
  }
  double total = 0.0;
  for (const auto& r : solution.routes) total += route_cost(instance, r.customers);
  return total;
}

void drop_empty_routes(Solution& solution) {
  std::erase_if(solution.routes, [](const Route& r) { return r.customers.empty(); });
}

std::vector<int> route_index(const Instance& instance, const Solution& solution) {
  std::vector<int> where(instance.node_count(), -1);
  for (std::size_t r = 0; r < solution.routes.size(); ++r) {
    for (NodeId c : solution.routes[r].customers) {
      where[static_cast<std::size_t>(c)] = static_cast<int>(r);
    }
  }
  return where;
}

Solution remove_customers(const Instance& instance, Solution solution,
                          std::span<const NodeId> ids) {
  if (ids.empty()) return solution;
  std::vector<char> marked(instance.node_count(), 0);
  const auto where = route_index(instance, solution);
  for (NodeId id : ids) {
    if (!instance.is_customer(id)) {
      throw InvalidArgument("remove_customers: " + std::to_string(id) + " is not a customer");
    }
    const auto slot = static_cast<std::size_t>(id);
    if (where[slot] < 0) {
      throw InvalidArgument("remove_customers: customer " + std::to_string(id) +
                            " is not routed");
    }
    if (marked[slot]) {
      throw InvalidArgument("remove_customers: duplicate id " + std::to_string(id));
    }
    marked[slot] = 1;
  }
  for (auto& r : solution.routes) {
    std::erase_if(r.customers, [&](NodeId c) { return marked[static_cast<std::size_t>(c)] != 0; });
  }
  drop_empty_routes(solution);
  solution.pool.insert(solution.pool.end(), ids.begin(), ids.end());
  return solution;
}

void validate_partition(const Instance& instance, const Solution& solution) {
  std::vector<int> seen(instance.node_count(), 0);
  auto mark = [&](NodeId id) {
    if (!instance.is_customer(id)) {
      throw InvalidArgument("partition: " + std::to_string(id) + " is not a customer");
    }
    if (seen[static_cast<std::size_t>(id)]++ != 0) {
      throw InvalidArgument("partition: customer " + std::to_string(id) + " appears twice");
    }
  };
  for (const auto& r : solution.routes) {
    for (NodeId c : r.customers) mark(c);
  }
  for (NodeId c : solution.pool) mark(c);
  for (std::size_t id = 1; id < seen.size(); ++id) {
    if (seen[id] == 0) {
      throw InvalidArgument("partition: customer " + std::to_string(id) + " is missing");
    }
  }
}

}  // namespace dprlns
