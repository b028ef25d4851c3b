#include "dprlns/policy.hpp"

#include <cmath>
#include <random>

#include "dprlns/embedding.hpp"
#include "dprlns/error.hpp"

namespace dprlns {

std::vector<NodeId> sample_anchors(const PolicyOutput& out, std::size_t k, Rng& rng) {
  if (k < 1) throw InvalidArgument("sample_anchors: k must be >= 1");
  std::vector<double> mass(out.anchor_probs.data(), out.anchor_probs.data() + out.anchor_probs.size());
  if (!mass.empty()) mass[0] = 0.0;
  std::size_t positive = 0;
  for (double m : mass) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw InvalidArgument("sample_anchors: invalid probability");
    positive += m > 0.0 ? 1 : 0;
  }
  if (positive == 0) throw InvalidArgument("sample_anchors: degenerate distribution (all zero)");
  if (k > positive) {
    throw InvalidArgument("sample_anchors: k exceeds the customers with positive probability");
  }
  std::vector<NodeId> anchors;
  anchors.reserve(k);
  for (std::size_t draw = 0; draw < k; ++draw) {
    std::discrete_distribution<std::size_t> pick(mass.begin(), mass.end());
    const std::size_t id = pick(rng);
    anchors.push_back(static_cast<NodeId>(id));
    mass[id] = 0.0;
  }
  return anchors;
}

double sample_coefficient(double alpha, double beta, Rng& rng) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw InvalidArgument("sample_coefficient: alpha and beta must be positive");
  }
  const double x = std::gamma_distribution<double>(alpha, 1.0)(rng);
  const double y = std::gamma_distribution<double>(beta, 1.0)(rng);
  if (x + y == 0.0) return alpha >= beta ? 1.0 : 0.0;  // both gammas underflowed
  return x / (x + y);
}

std::vector<double> sample_coefficients(const PolicyOutput& out, Rng& rng) {
  std::vector<double> coeffs(static_cast<std::size_t>(out.alpha.size()), 0.0);
  for (Eigen::Index i = 1; i < out.alpha.size(); ++i) {
    coeffs[static_cast<std::size_t>(i)] = sample_coefficient(out.alpha(i), out.beta(i), rng);
  }
  return coeffs;
}

PolicyOutput random_policy(const Instance& instance, const Solution&) {
  const auto n = static_cast<Eigen::Index>(instance.node_count());
  PolicyOutput out;
  out.anchor_probs = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n - 1));
  out.anchor_probs(0) = 0.0;
  out.alpha = Eigen::VectorXd::Ones(n);
  out.beta = Eigen::VectorXd::Ones(n);
  return out;
}

PolicyOutput RandomPolicy::evaluate(const Instance& instance, const Solution& solution) {
  return random_policy(instance, solution);
}

NeuralPolicy::NeuralPolicy(std::shared_ptr<const WeightBundle> bundle)
  : bundle_(std::move(bundle)),
    weights_(HrgcnWeights<double>::from_bundle(*bundle_)),
    state_(RecurrentState<double>::zeros(weights_.n_a, weights_.n_h)) {}

PolicyOutput NeuralPolicy::evaluate(const Instance& instance, const Solution& solution) {
  const auto emb = build_embeddings<double>(instance, solution);
  const auto graphs = GraphOperators<double>::from_arcs(build_arcs(instance, solution, weights_.k));
  pending_ = hrgcn_forward(emb, graphs, state_, weights_);
  PolicyOutput out;
  out.anchor_probs = pending_->anchor_probs;
  out.alpha = pending_->alpha;
  out.beta = pending_->beta;
  out.hidden = pending_->hidden;
  return out;
}

void NeuralPolicy::commit(std::span<const NodeId> anchors) {
  if (!pending_) throw Error("NeuralPolicy::commit without a preceding evaluate");
  state_ = pending_->next_state(anchors);
  pending_.reset();
  ++steps_;
}

void NeuralPolicy::reset() {
  state_ = RecurrentState<double>::zeros(weights_.n_a, weights_.n_h);
  pending_.reset();
  steps_ = 0;
}

}  // namespace dprlns
