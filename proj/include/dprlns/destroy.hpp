#ifndef DPRLNS_DESTROY_HPP_
#define DPRLNS_DESTROY_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "dprlns/instance.hpp"
#include "dprlns/repair.hpp"
#include "dprlns/solution.hpp"

namespace dprlns {

/// Parameters of one dynamic partial removal.
struct DprRequest {
  /// Processed in order; they share the single `n_destroy` budget.
  std::vector<NodeId> anchors;
  /// Route coefficient in [0, 1], indexed by node id (entry 0 unused).
  std::vector<double> coefficients;
  std::size_t n_destroy = 1;
};

/// One node reached by a destruction wave.
struct DprStep {
  NodeId anchor = 0;
  NodeId node = 0;
  /// Already removed when reached; nothing else in the step is meaningful.
  bool skipped = false;
  std::size_t route_size = 0;
  std::size_t quota = 0;
  std::vector<NodeId> removed;
};

struct DestroyResult {
  Solution solution;
  std::vector<NodeId> removed;
  std::vector<DprStep> steps;
};

/// max(1, round-half-up(coefficient * remaining route length)).
std::size_t dpr_quota(double coefficient, std::size_t route_size) noexcept;

/// Radiates from each anchor over customers by ascending distance; each
/// reached node removes a contiguous segment around itself on its route,
/// growing successor-first and alternating sides, until `n_destroy`
/// customers are gone. Throws on incomplete solutions, anchors that are not
/// routed, coefficients outside [0, 1] or a budget outside [1, N].
DestroyResult dpr_destroy(const Instance& instance, const Solution& solution,
                          const DprRequest& request);

/// `n` routed customers sampled uniformly without replacement.
DestroyResult random_destroy(const Instance& instance, const Solution& solution,
                             std::size_t n, Rng& rng);

/// Removes route-contiguous strings around a random seed customer, first on
/// the seed's route, then on the routes of its nearest untouched customers.
/// If every route has been cut and the budget is still open, the strings grow.
DestroyResult string_destroy(const Instance& instance, const Solution& solution,
                             std::size_t n, Rng& rng);

/// Removes a random seed customer and its `n - 1` nearest routed neighbours.
DestroyResult proximity_destroy(const Instance& instance, const Solution& solution,
                                std::size_t n, Rng& rng);

// Roulette-wheel operator choice for the ALNS-lite baseline.

enum class Outcome { NewGlobalBest, AcceptedImproving, AcceptedWorse, Rejected };

struct AdaptiveParams {
  double reaction = 0.1;  // rho
  double score_best = 33.0;
  double score_improving = 9.0;
  double score_accepted = 13.0;
};

/// Index drawn with probability proportional to `weights`.
std::size_t adaptive_select(std::span<const double> weights, Rng& rng);

/// weight[op] <- (1 - rho) * weight[op] + rho * score(outcome).
void update_weights(std::span<double> weights, std::size_t op, Outcome outcome,
                    const AdaptiveParams& params = {});

}  // namespace dprlns

#endif  // DPRLNS_DESTROY_HPP_
