#ifndef DPRLNS_INSTANCE_HPP_
#define DPRLNS_INSTANCE_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace dprlns {

using NodeId = int;
inline constexpr NodeId kDepot = 0;

struct Node {
  NodeId id = 0;
  double x = 0.0;
  double y = 0.0;
  double demand = 0.0;
  double tw_start = 0.0;
  double tw_end = 0.0;
  double service = 0.0;

  bool operator==(const Node&) const = default;
};

/// Immutable CVRPTW instance. Node 0 is the depot; travel time equals
/// Euclidean distance (unit speed).
class Instance {
public:
  Instance(std::string name, std::vector<Node> nodes, double capacity);

  const std::string& name() const noexcept { return name_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
  const Node& depot() const { return nodes_.front(); }

  double capacity() const noexcept { return capacity_; }
  /// Time span of the depot window, e_0.
  double t_max() const noexcept { return nodes_.front().tw_end; }

  std::size_t customer_count() const noexcept { return nodes_.size() - 1; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  bool is_customer(NodeId id) const noexcept {
    return id > 0 && static_cast<std::size_t>(id) < nodes_.size();
  }

  double distance(NodeId a, NodeId b) const { return distances_(a, b); }
  const Eigen::MatrixXd& distances() const noexcept { return distances_; }

  /// All customers ordered by ascending distance from `from` (ties by id).
  /// For a customer the list starts with itself.
  std::span<const NodeId> neighbors(NodeId from) const {
    return neighbors_[static_cast<std::size_t>(from)];
  }

private:
  std::string name_;
  std::vector<Node> nodes_;
  double capacity_;
  Eigen::MatrixXd distances_;
  std::vector<std::vector<NodeId>> neighbors_;
};

}  // namespace dprlns

#endif  // DPRLNS_INSTANCE_HPP_
