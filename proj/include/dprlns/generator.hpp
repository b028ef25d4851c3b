#ifndef DPRLNS_GENERATOR_HPP_
#define DPRLNS_GENERATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

#include "dprlns/instance.hpp"

namespace dprlns {

struct GeneratorParams {
  std::size_t n_customers = 25;
  /// Probability that a customer's window is the whole horizon [0, t_max].
  double p_start = 0.3;
  std::uint64_t seed = 0;
};

inline constexpr double kSyntheticCapacity = 200.0;
inline constexpr double kMapSize = 100.0;

/// One demand draw: Normal(20, 11^2) rounded to an integer, redrawn from
/// U{5..36} when it falls outside [1, 45].
double sample_demand(std::mt19937_64& rng);

/// Synthetic CVRPTW instance; fully determined by `params.seed`.
/// Positions are uniform or clustered (fair coin), the service time is
/// shared by all customers, and every customer is servable by a dedicated
/// route.
Instance generate_synthetic(const GeneratorParams& params);

}  // namespace dprlns

#endif  // DPRLNS_GENERATOR_HPP_
