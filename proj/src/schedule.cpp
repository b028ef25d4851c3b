#include "dprlns/schedule.hpp"

#include <algorithm>

#include "dprlns/error.hpp"

namespace dprlns {

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::CapacityExceeded: return "CapacityExceeded";
    case ViolationKind::TimeWindowMissed: return "TimeWindowMissed";
    case ViolationKind::DepotReturnLate: return "DepotReturnLate";
  }
  return "Unknown";
}

namespace {

void require_customers(const Instance& instance, std::span<const NodeId> route) {
  if (route.empty()) throw InvalidArgument("check_route: empty route");
  for (NodeId id : route) {
    if (!instance.is_customer(id)) {
      throw InvalidArgument("check_route: unknown customer id " + std::to_string(id));
    }
  }
}

// Shared recursion; `on_visit` observes each served node.
template <typename OnVisit>
std::variant<double, Violation> simulate(const Instance& instance,
                                         std::span<const NodeId> route,
                                         OnVisit&& on_visit) {
  double load = 0.0;
  double time = 0.0;
  NodeId prev = kDepot;
  for (NodeId id : route) {
    const Node& n = instance.node(id);
    load += n.demand;
    if (load > instance.capacity()) {
      return Violation{ViolationKind::CapacityExceeded, id};
    }
    const double arrival = time + instance.distance(prev, id);
    if (arrival > n.tw_end) {
      return Violation{ViolationKind::TimeWindowMissed, id};
    }
    const double start = std::max(arrival, n.tw_start);
    time = start + n.service;
    on_visit(Visit{id, arrival, start - arrival, time});
    prev = id;
  }
  const double back = time + instance.distance(prev, kDepot);
  if (back > instance.t_max()) {
    return Violation{ViolationKind::DepotReturnLate, kDepot};
  }
  return back;
}

}  // namespace

RouteCheck check_route(const Instance& instance, std::span<const NodeId> route) {
  require_customers(instance, route);
  Schedule schedule;
  schedule.visits.reserve(route.size());
  auto outcome = simulate(instance, route,
                          [&](const Visit& v) { schedule.visits.push_back(v); });
  if (const auto* violation = std::get_if<Violation>(&outcome)) {
    return *violation;
  }
  schedule.return_time = std::get<double>(outcome);
  for (NodeId id : route) schedule.load += instance.node(id).demand;
  return schedule;
}

bool route_feasible(const Instance& instance, std::span<const NodeId> route) {
  require_customers(instance, route);
  return std::holds_alternative<double>(simulate(instance, route, [](const Visit&) {}));
}

}  // namespace dprlns
