#include "dprlns/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dprlns/error.hpp"

namespace dprlns {

namespace {

void validate(const std::vector<Node>& nodes, double capacity) {
  if (nodes.size() < 2) {
    throw InvalidInstance("instance needs a depot and at least one customer");
  }
  if (!(capacity > 0.0)) {
    throw InvalidInstance("vehicle capacity must be positive");
  }
  const Node& depot = nodes.front();
  if (depot.demand != 0.0 || depot.service != 0.0) {
    throw InvalidInstance("depot must have zero demand and zero service time");
  }
  if (depot.tw_start != 0.0) {
    throw InvalidInstance("depot window must open at time 0");
  }
  const double t_max = depot.tw_end;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    const std::string tag = "node " + std::to_string(i);
    if (n.id != static_cast<NodeId>(i)) {
      throw InvalidInstance(tag + " has id " + std::to_string(n.id));
    }
    if (!std::isfinite(n.x) || !std::isfinite(n.y)) {
      throw InvalidInstance(tag + ": non-finite coordinates");
    }
    if (n.demand < 0.0) throw InvalidInstance(tag + ": negative demand");
    if (n.service < 0.0) throw InvalidInstance(tag + ": negative service time");
    if (n.tw_start > n.tw_end) throw InvalidInstance(tag + ": tw_start > tw_end");
    if (i > 0 && (n.tw_start < 0.0 || n.tw_end > t_max)) {
      throw InvalidInstance(tag + ": time window outside [0, t_max]");
    }
  }
}

}  // namespace

Instance::Instance(std::string name, std::vector<Node> nodes, double capacity)
  : name_(std::move(name)), nodes_(std::move(nodes)), capacity_(capacity) {
  validate(nodes_, capacity_);

  const auto n = static_cast<Eigen::Index>(nodes_.size());
  Eigen::Matrix<double, Eigen::Dynamic, 2> xy(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    xy(i, 0) = nodes_[static_cast<std::size_t>(i)].x;
    xy(i, 1) = nodes_[static_cast<std::size_t>(i)].y;
  }
  distances_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    distances_(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (xy.row(i) - xy.row(j)).norm();
      distances_(i, j) = d;
      distances_(j, i) = d;
    }
  }

  neighbors_.resize(nodes_.size());
  std::vector<NodeId> customers(nodes_.size() - 1);
  std::iota(customers.begin(), customers.end(), 1);
  for (std::size_t from = 0; from < nodes_.size(); ++from) {
    auto& order = neighbors_[from];
    order = customers;
    const auto row = static_cast<Eigen::Index>(from);
    const auto self = static_cast<NodeId>(from);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      // A customer always leads its own list, even against co-located nodes.
      if (a == self || b == self) return a == self && b != self;
      const double da = distances_(row, a);
      const double db = distances_(row, b);
      return da != db ? da < db : a < b;
    });
  }
}

}  // namespace dprlns
