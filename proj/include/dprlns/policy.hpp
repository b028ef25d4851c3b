#ifndef DPRLNS_POLICY_HPP_
#define DPRLNS_POLICY_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dprlns/hrgcn.hpp"
#include "dprlns/instance.hpp"
#include "dprlns/repair.hpp"
#include "dprlns/solution.hpp"
#include "dprlns/weights.hpp"

namespace dprlns {

/// Per-node DPR parameters for one iteration. Vectors are indexed by node id.
struct PolicyOutput {
  Eigen::VectorXd anchor_probs;  // depot entry 0, sums to 1
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  Eigen::VectorXd hidden;  // recurrent state after this step; empty if stateless
  std::optional<double> value_hint;
};

/// k distinct customers drawn without replacement, proportionally to
/// anchor_probs, in draw order.
std::vector<NodeId> sample_anchors(const PolicyOutput& out, std::size_t k, Rng& rng);

/// Beta(alpha, beta) variate, drawn as X / (X + Y) with X ~ Gamma(alpha), Y ~ Gamma(beta).
double sample_coefficient(double alpha, double beta, Rng& rng);

/// One Beta draw per customer; entry 0 is unused and left at 0.
std::vector<double> sample_coefficients(const PolicyOutput& out, Rng& rng);

/// Source of DPR parameters.
class Policy {
public:
  virtual ~Policy() = default;

  /// Called once per iteration on the complete current solution.
  virtual PolicyOutput evaluate(const Instance& instance, const Solution& solution) = 0;

  /// Reports the anchors sampled from the last evaluate() output.
  virtual void commit(std::span<const NodeId> anchors) { (void)anchors; }

  virtual void reset() {}
};

/// Uniform anchors and Beta(1, 1) coefficients, independent of the solution.
class RandomPolicy final : public Policy {
public:
  PolicyOutput evaluate(const Instance& instance, const Solution& solution) override;
};

PolicyOutput random_policy(const Instance& instance, const Solution& solution);

/// HRGCN actor with its recurrent state. The state advances once per
/// evaluate()/commit() pair.
class NeuralPolicy final : public Policy {
public:
  explicit NeuralPolicy(std::shared_ptr<const WeightBundle> bundle);

  PolicyOutput evaluate(const Instance& instance, const Solution& solution) override;
  void commit(std::span<const NodeId> anchors) override;
  void reset() override;

  const RecurrentState<double>& state() const noexcept { return state_; }
  std::size_t steps() const noexcept { return steps_; }
  Eigen::Index embedding_width() const noexcept { return weights_.n_a; }

private:
  std::shared_ptr<const WeightBundle> bundle_;
  HrgcnWeights<double> weights_;
  RecurrentState<double> state_;
  std::optional<HrgcnOutput<double>> pending_;
  std::size_t steps_ = 0;
};

}  // namespace dprlns

#endif  // DPRLNS_POLICY_HPP_
