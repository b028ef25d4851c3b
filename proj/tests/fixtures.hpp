#ifndef DPRLNS_TESTS_FIXTURES_HPP_
#define DPRLNS_TESTS_FIXTURES_HPP_

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "dprlns/destroy.hpp"
#include "dprlns/instance.hpp"
#include "dprlns/schedule.hpp"
#include "dprlns/solution.hpp"

#ifndef DPRLNS_TEST_DATA_DIR
#error "DPRLNS_TEST_DATA_DIR must point at tests/data"
#endif

namespace fixtures {

using dprlns::Instance;
using dprlns::Node;
using dprlns::NodeId;
using dprlns::Solution;

inline std::string data_path(const std::string& rel) {
  return std::string(DPRLNS_TEST_DATA_DIR) + "/" + rel;
}

/// Three routes of 8, 12 and 12 customers. A (on the second route), B (on
/// the third), C (A's successor) and D (on the first) are the four
/// customers nearest to A, in that order; everything else is far away.
struct DprScript {
  Instance instance;
  Solution solution;
  NodeId a, b, c, d;
  std::vector<double> coefficients;
};

inline DprScript dpr_script() {
  constexpr int kSizes[] = {8, 12, 12};
  std::vector<Node> nodes{{0, 500.0, 500.0, 0, 0, 1e6, 0}};
  Solution s;
  NodeId next = 1;
  for (int r = 0; r < 3; ++r) {
    dprlns::Route route;
    for (int k = 0; k < kSizes[r]; ++k) {
      // Far nodes on a ring with strictly increasing radius.
      const double angle = 0.37 * next;
      const double radius = 40.0 + next;
      nodes.push_back(Node{next, radius * std::cos(angle), radius * std::sin(angle), 1, 0, 1e6, 0});
      route.customers.push_back(next++);
    }
    s.routes.push_back(route);
  }
  const NodeId a = s.routes[1].customers[5];
  const NodeId c = s.routes[1].customers[6];
  const NodeId b = s.routes[2].customers[4];
  const NodeId d = s.routes[0].customers[3];
  auto place = [&](NodeId id, double x, double y) {
    nodes[static_cast<std::size_t>(id)].x = x;
    nodes[static_cast<std::size_t>(id)].y = y;
  };
  place(a, 0.0, 0.0);
  place(b, 1.0, 0.0);
  place(c, 0.0, 2.0);
  place(d, 3.0, 0.0);
  Instance inst("scripted", std::move(nodes), 1e6);
  std::vector<double> coeff(inst.node_count(), 0.9);
  coeff[static_cast<std::size_t>(a)] = 0.5;
  coeff[static_cast<std::size_t>(b)] = 0.25;
  coeff[static_cast<std::size_t>(c)] = 0.25;
  coeff[static_cast<std::size_t>(d)] = 0.5;
  return DprScript{std::move(inst), std::move(s), a, b, c, d, std::move(coeff)};
}

/// Random partial solution built without the repair module: customers are
/// split into random routes, infeasible routes are broken into feasible
/// singletons, and about a third of the customers start in the pool.
inline Solution random_partial(const Instance& inst, std::mt19937_64& rng) {
  std::vector<NodeId> ids;
  for (NodeId i = 1; i <= static_cast<NodeId>(inst.customer_count()); ++i) ids.push_back(i);
  std::shuffle(ids.begin(), ids.end(), rng);
  Solution s;
  std::bernoulli_distribution to_pool(0.33);
  std::bernoulli_distribution cut(0.3);
  dprlns::Route current;
  auto flush = [&] {
    if (current.customers.empty()) return;
    if (dprlns::is_feasible(dprlns::check_route(inst, current.customers))) {
      s.routes.push_back(current);
    } else {
      for (NodeId c : current.customers) {
        const std::vector<NodeId> alone{c};
        if (dprlns::is_feasible(dprlns::check_route(inst, alone))) {
          s.routes.push_back(dprlns::Route{alone});
        } else {
          s.pool.push_back(c);
        }
      }
    }
    current.customers.clear();
  };
  for (NodeId c : ids) {
    if (to_pool(rng)) {
      s.pool.push_back(c);
      continue;
    }
    current.customers.push_back(c);
    if (cut(rng)) flush();
  }
  flush();
  return s;
}

/// Random routes over random customer subsets.
inline std::vector<NodeId> random_route(const Instance& inst, std::mt19937_64& rng) {
  std::vector<NodeId> ids;
  for (NodeId i = 1; i <= static_cast<NodeId>(inst.customer_count()); ++i) ids.push_back(i);
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(std::uniform_int_distribution<std::size_t>(1, ids.size())(rng));
  return ids;
}

}  // namespace fixtures

#endif  // DPRLNS_TESTS_FIXTURES_HPP_
