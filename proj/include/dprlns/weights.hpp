#ifndef DPRLNS_WEIGHTS_HPP_
#define DPRLNS_WEIGHTS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace dprlns {

inline constexpr const char* kWeightsFormat = "dprlns-weights/1";

/// Row-major tensor of rank 1 or 2.
struct Tensor {
  std::vector<Eigen::Index> shape;
  std::vector<double> values;

  bool operator==(const Tensor&) const = default;
};

/// Named parameter tensors of the HRGCN actor plus its dimensions.
struct WeightBundle {
  Eigen::Index n_a = 128;  // node embedding width
  Eigen::Index n_h = 128;  // GRU hidden width
  std::size_t k = 10;      // k-NN arcs per node
  int version = 1;
  std::map<std::string, Tensor> tensors;

  const Tensor& at(const std::string& name) const;
  bool operator==(const WeightBundle&) const = default;
};

/// Every tensor name with its declared shape, in file order:
///   gcn0.{w_self,w_nbr} [N_A,10], gcn0.bias [N_A]
///   gcn_route{1,2}, gcn_near, gcn_route_inv{1,2}: [N_A,N_A] / [N_A]
///   gru.w_ih [3N_H,N_A], gru.w_hh [3N_H,N_H], gru.b_ih, gru.b_hh [3N_H]
///     (gate rows ordered reset, update, candidate)
///   gate.weight [N_A,N_H], gate.bias [N_A]
///   {anchor,alpha,beta}_head.weight [1,N_A], .bias [1]
std::vector<std::pair<std::string, std::vector<Eigen::Index>>> bundle_layout(Eigen::Index n_a,
                                                                             Eigen::Index n_h);

/// Throws InvalidArgument on a missing, unexpected, misshapen or non-finite tensor.
void validate_bundle(const WeightBundle& bundle);

std::string serialize_bundle(const WeightBundle& bundle);
WeightBundle parse_bundle(const std::string& text);

WeightBundle load_bundle(const std::filesystem::path& path);
void save_bundle(const WeightBundle& bundle, const std::filesystem::path& path);

/// Untrained bundle: uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights, zero biases.
WeightBundle random_bundle(Eigen::Index n_a, Eigen::Index n_h, std::size_t k, std::uint64_t seed);

}  // namespace dprlns

#endif  // DPRLNS_WEIGHTS_HPP_
