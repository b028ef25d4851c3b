#ifndef DPRLNS_REPAIR_HPP_
#define DPRLNS_REPAIR_HPP_

#include <cstddef>
#include <optional>
#include <random>

#include "dprlns/instance.hpp"
#include "dprlns/solution.hpp"

namespace dprlns {

using Rng = std::mt19937_64;

struct Placement {
  /// Existing route index; nullopt opens a new route.
  std::optional<std::size_t> route;
  /// Insert before customers[position]; equals size() for the last slot.
  std::size_t position = 0;
  double delta = 0.0;

  bool new_route() const noexcept { return !route.has_value(); }
};

/// Deltas are compared after snapping to this grid.
inline constexpr double kDeltaSnap = 1e-12;

double snap_delta(double delta) noexcept;

/// Cheapest feasible placement of pooled customer `c`. Ties go to the
/// lowest route index, then the lowest position; a new route only wins on a
/// strictly smaller delta. Throws InfeasibleCustomer when not even a new
/// route is feasible and InvalidArgument when `c` is not in the pool.
Placement best_insertion(const Instance& instance, const Solution& solution, NodeId c);

/// Moves `c` from the pool into the solution at `where`.
void apply_placement(Solution& solution, const Placement& where, NodeId c);

/// Shuffles the pool with `rng`, then inserts the customers one at a time
/// at their cheapest feasible placement.
Solution least_cost_repair(const Instance& instance, Solution solution, Rng& rng);

}  // namespace dprlns

#endif  // DPRLNS_REPAIR_HPP_
