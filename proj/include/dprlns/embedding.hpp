#ifndef DPRLNS_EMBEDDING_HPP_
#define DPRLNS_EMBEDDING_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "dprlns/error.hpp"
#include "dprlns/instance.hpp"
#include "dprlns/linalg.hpp"
#include "dprlns/solution.hpp"

namespace dprlns {

inline constexpr Eigen::Index kEmbeddingDim = 10;

/// Column layout of the node embedding.
enum EmbeddingColumn : Eigen::Index {
  kEmbX = 0,
  kEmbY,
  kEmbDemand,
  kEmbTwStart,
  kEmbTwEnd,
  kEmbService,
  kEmbRouteDemandSoFar,
  kEmbRouteDistanceSoFar,
  kEmbRouteDemand,
  kEmbRouteDistance,
};

/// (N+1) x 10 node embeddings of a complete solution, rows by node id.
/// Demand columns are divided by the capacity, everything else by t_max.
/// The distance-so-far column stops at the node; the route total includes
/// the return leg. The depot's route columns are zero.
template <typename Scalar = double>
Matrix<Scalar> build_embeddings(const Instance& instance, const Solution& solution) {
  if (!solution.complete()) {
    throw IncompleteSolution("build_embeddings: solution has pooled customers");
  }
  const double q = instance.capacity();
  const double t = instance.t_max();
  Matrix<Scalar> emb = Matrix<Scalar>::Zero(static_cast<Eigen::Index>(instance.node_count()),
                                            kEmbeddingDim);
  for (const Node& n : instance.nodes()) {
    auto row = emb.row(n.id);
    row(kEmbX) = static_cast<Scalar>(n.x / t);
    row(kEmbY) = static_cast<Scalar>(n.y / t);
    row(kEmbDemand) = static_cast<Scalar>(n.demand / q);
    row(kEmbTwStart) = static_cast<Scalar>(n.tw_start / t);
    row(kEmbTwEnd) = static_cast<Scalar>(n.tw_end / t);
    row(kEmbService) = static_cast<Scalar>(n.service / t);
  }
  for (const auto& route : solution.routes) {
    double demand = 0.0;
    double dist = 0.0;
    NodeId prev = kDepot;
    for (NodeId c : route.customers) {
      demand += instance.node(c).demand;
      dist += instance.distance(prev, c);
      emb(c, kEmbRouteDemandSoFar) = static_cast<Scalar>(demand / q);
      emb(c, kEmbRouteDistanceSoFar) = static_cast<Scalar>(dist / t);
      prev = c;
    }
    const double total = dist + instance.distance(prev, kDepot);
    for (NodeId c : route.customers) {
      emb(c, kEmbRouteDemand) = static_cast<Scalar>(demand / q);
      emb(c, kEmbRouteDistance) = static_cast<Scalar>(total / t);
    }
  }
  return emb;
}

using Arc = std::pair<NodeId, NodeId>;  // (from, to)

/// Graphs consumed by the network. Route arcs join consecutive customers
/// only; depot legs are not included.
struct GraphArcs {
  std::size_t n_nodes = 0;
  std::vector<Arc> knn;
  std::vector<Arc> route_fwd;
  std::vector<Arc> route_inv;
};

/// k-NN arcs i -> j over all nodes (depot included) plus the route graphs.
GraphArcs build_arcs(const Instance& instance, const Solution& solution, std::size_t k);

/// Row-normalised in-arc operator A with A(i, j) = 1 / indeg(i) for every
/// arc j -> i, so (A * F).row(i) is the mean of i's in-neighbour features.
template <typename Scalar>
SparseMatrix<Scalar> mean_aggregator(const std::vector<Arc>& arcs, std::size_t n_nodes) {
  std::vector<int> indeg(n_nodes, 0);
  for (const auto& [from, to] : arcs) ++indeg[static_cast<std::size_t>(to)];
  std::vector<Eigen::Triplet<Scalar>> entries;
  entries.reserve(arcs.size());
  for (const auto& [from, to] : arcs) {
    entries.emplace_back(to, from, Scalar(1) / static_cast<Scalar>(indeg[static_cast<std::size_t>(to)]));
  }
  const auto n = static_cast<Eigen::Index>(n_nodes);
  SparseMatrix<Scalar> a(n, n);
  a.setFromTriplets(entries.begin(), entries.end());
  return a;
}

}  // namespace dprlns

#endif  // DPRLNS_EMBEDDING_HPP_
