#include "dprlns/embedding.hpp"

#include <algorithm>
#include <numeric>

namespace dprlns {

GraphArcs build_arcs(const Instance& instance, const Solution& solution, std::size_t k) {
  GraphArcs arcs;
  arcs.n_nodes = instance.node_count();
  const std::size_t per_node = std::min(k, arcs.n_nodes - 1);

  std::vector<NodeId> others(arcs.n_nodes);
  std::iota(others.begin(), others.end(), 0);
  const auto& d = instance.distances();
  for (NodeId i = 0; i < static_cast<NodeId>(arcs.n_nodes); ++i) {
    auto order = others;
    std::erase(order, i);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(per_node), order.end(),
                      [&](NodeId a, NodeId b) { return d(i, a) != d(i, b) ? d(i, a) < d(i, b) : a < b; });
    for (std::size_t m = 0; m < per_node; ++m) arcs.knn.emplace_back(i, order[m]);
  }

  for (const auto& r : solution.routes) {
    for (std::size_t m = 1; m < r.customers.size(); ++m) {
      arcs.route_fwd.emplace_back(r.customers[m - 1], r.customers[m]);
      arcs.route_inv.emplace_back(r.customers[m], r.customers[m - 1]);
    }
  }
  return arcs;
}

}  // namespace dprlns
