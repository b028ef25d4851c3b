#ifndef DPRLNS_SCHEDULE_HPP_
#define DPRLNS_SCHEDULE_HPP_

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "dprlns/instance.hpp"

namespace dprlns {

struct Visit {
  NodeId node = 0;
  double arrival = 0.0;
  double wait = 0.0;
  double departure = 0.0;
};

/// Forward time-window recursion of one route: departure =
/// max(arrival, tw_start) + service, next arrival = departure + distance.
struct Schedule {
  std::vector<Visit> visits;
  double load = 0.0;
  double return_time = 0.0;
};

enum class ViolationKind { CapacityExceeded, TimeWindowMissed, DepotReturnLate };

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  /// First offending node; the depot (0) for DepotReturnLate.
  NodeId node;

  bool operator==(const Violation&) const = default;
};

using RouteCheck = std::variant<Schedule, Violation>;

/// Checks capacity, customer windows and the depot return, in visit order.
/// At a single node the capacity check precedes the window check.
/// Throws InvalidArgument on an empty route or an id that is not a customer.
RouteCheck check_route(const Instance& instance, std::span<const NodeId> route);

/// Allocation-free verdict equivalent to holds_alternative<Schedule>(check_route()).
bool route_feasible(const Instance& instance, std::span<const NodeId> route);

inline bool is_feasible(const RouteCheck& check) {
  return std::holds_alternative<Schedule>(check);
}

}  // namespace dprlns

#endif  // DPRLNS_SCHEDULE_HPP_
