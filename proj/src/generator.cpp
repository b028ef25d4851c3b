#include "dprlns/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "dprlns/error.hpp"

namespace dprlns {

namespace {

constexpr double kDemandMean = 20.0;
constexpr double kDemandSigma = 11.0;  // variance 121
constexpr int kWindowRetries = 1000;
constexpr double kClusterSigma = 5.0;

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool singleton_servable(const Node& depot, const Node& c, double t_max) {
  const double d = std::hypot(c.x - depot.x, c.y - depot.y);
  if (d > c.tw_end) return false;
  return std::max(d, c.tw_start) + c.service + d <= t_max;
}

}  // namespace

double sample_demand(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(kDemandMean, kDemandSigma);
  const double q = std::round(normal(rng));
  if (q < 1.0 || q > 45.0) return static_cast<double>(uniform_int(rng, 5, 36));
  return q;
}

Instance generate_synthetic(const GeneratorParams& params) {
  if (params.n_customers < 1) throw InvalidArgument("generator: n_customers must be >= 1");
  if (!(params.p_start >= 0.0 && params.p_start <= 1.0)) {
    throw InvalidArgument("generator: p_start must lie in [0, 1]");
  }
  std::mt19937_64 rng(params.seed);
  const auto n = params.n_customers;

  const double t_max = uniform_int(rng, 600, 10000);
  const double service = uniform_int(rng, 10, 100);

  std::vector<Node> nodes(n + 1);
  nodes[0] = Node{0, uniform_real(rng, 0.0, kMapSize), uniform_real(rng, 0.0, kMapSize),
                  0.0, 0.0, t_max, 0.0};

  const bool clustered = std::bernoulli_distribution(0.5)(rng);
  std::vector<std::pair<double, double>> centers;
  if (clustered) {
    // Cluster count drawn from [5, max(6, N/5)).
    const int upper = std::max(6, static_cast<int>(n / 5));
    centers.resize(static_cast<std::size_t>(uniform_int(rng, 5, upper - 1)));
    for (auto& c : centers) {
      c = {uniform_real(rng, 0.0, kMapSize), uniform_real(rng, 0.0, kMapSize)};
    }
  }
  std::normal_distribution<double> spread(0.0, kClusterSigma);
  std::uniform_int_distribution<std::size_t> pick_center(0, centers.empty() ? 0 : centers.size() - 1);

  for (std::size_t i = 1; i <= n; ++i) {
    Node& c = nodes[i];
    c.id = static_cast<NodeId>(i);
    if (clustered) {
      const auto& [cx, cy] = centers[pick_center(rng)];
      c.x = std::clamp(cx + spread(rng), 0.0, kMapSize);
      c.y = std::clamp(cy + spread(rng), 0.0, kMapSize);
    } else {
      c.x = uniform_real(rng, 0.0, kMapSize);
      c.y = uniform_real(rng, 0.0, kMapSize);
    }
    c.demand = sample_demand(rng);
    c.service = service;

    if (std::bernoulli_distribution(params.p_start)(rng)) {
      c.tw_start = 0.0;
      c.tw_end = t_max;
      continue;
    }
    bool placed = false;
    for (int attempt = 0; attempt < kWindowRetries && !placed; ++attempt) {
      const double gap = std::min<double>(uniform_int(rng, 10, 1000), t_max);
      c.tw_start = uniform_real(rng, 0.0, t_max - gap);
      c.tw_end = c.tw_start + gap;
      placed = singleton_servable(nodes[0], c, t_max);
    }
    if (!placed) {
      c.tw_start = 0.0;
      c.tw_end = t_max;
    }
  }
  return Instance("synthetic-" + std::to_string(n) + "-" + std::to_string(params.seed),
                  std::move(nodes), kSyntheticCapacity);
}

}  // namespace dprlns
