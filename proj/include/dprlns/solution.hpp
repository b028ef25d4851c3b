#ifndef DPRLNS_SOLUTION_HPP_
#define DPRLNS_SOLUTION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "dprlns/instance.hpp"

namespace dprlns {

/// Customers in visit order; the depot is implicit at both ends.
struct Route {
  std::vector<NodeId> customers;

  bool operator==(const Route&) const = default;
};

/// Routes plus the pool of currently removed customers. Together they
/// partition the customer set.
struct Solution {
  std::vector<Route> routes;
  std::vector<NodeId> pool;

  bool complete() const noexcept { return pool.empty(); }
  bool operator==(const Solution&) const = default;
};

/// Solution with every customer in the pool (ids 1..N in order).
Solution empty_solution(const Instance& instance);

/// depot -> route... -> depot length. An empty route costs 0.
double route_cost(const Instance& instance, std::span<const NodeId> route);

/// Total travelled distance. Throws IncompleteSolution if the pool is not empty.
double solution_cost(const Instance& instance, const Solution& solution);

/// Moves `ids` to the pool, preserving the order of everything else and
/// dropping routes that become empty. Throws InvalidArgument for the depot,
/// unknown ids, pooled ids and duplicates.
Solution remove_customers(const Instance& instance, Solution solution,
                          std::span<const NodeId> ids);

void drop_empty_routes(Solution& solution);

/// Throws InvalidArgument unless routes and pool partition the customers.
void validate_partition(const Instance& instance, const Solution& solution);

/// Per-node route index, or -1 for the depot and pooled customers.
std::vector<int> route_index(const Instance& instance, const Solution& solution);

}  // namespace dprlns

#endif  // DPRLNS_SOLUTION_HPP_
