#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lqmfg/control.hpp"
#include "lqmfg/model.hpp"

namespace lqmfg {

struct PopulationConfig {
  std::size_t N = 100;
  std::size_t horizon = 132;
  std::size_t replications = 20;
  std::uint64_t seed = 0;
};

/// Smallest T_h with gamma^T_h < 1e-6.
std::size_t default_horizon(double gamma);

struct PopulationResult {
  std::size_t N = 0;
  std::size_t horizon = 0;
  std::size_t replications = 0;
  /// Row-major replications x N.
  std::vector<double> per_agent_costs;
  /// Row-major replications x (horizon + 1).
  std::vector<double> mean_paths;
  double avg_cost = 0.0;

  double cost(std::size_t replication, std::size_t agent) const {
    return per_agent_costs[replication * N + agent];
  }
  double mean_state(std::size_t replication, std::size_t t) const {
    return mean_paths[replication * (horizon + 1) + t];
  }
};

/// N agents with dynamics z_{t+1} = a z + b u + w, each applying the
/// decentralized policy to its own state and paying
/// c_z (z_n - mean of the other N-1 states)^2 + c_u u^2, discounted and
/// summed over t = 0..horizon. Agent n's random streams are keyed by
/// (seed, replication, n), so the first agents of runs with different N see
/// identical noise. Results are bit-identical for any thread count
/// (0 selects the hardware concurrency).
PopulationResult simulate_population(const ControlPolicy& policy,
                                     const ValidatedModel& model,
                                     const PopulationConfig& cfg,
                                     unsigned threads = 1);

/// (1/N) sum_n z^n_t for t = 0..horizon. Throws IndexOutOfRange.
std::vector<double> empirical_mean_path(const PopulationResult& result,
                                        std::size_t replication);

struct CostEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimate of J(policy, target) for the generic agent, with
/// the discounted sum truncated after t = horizon.
CostEstimate simulate_generic_agent(const ControlPolicy& policy,
                                    const LatentSeq& target,
                                    const ValidatedModel& model,
                                    std::size_t n_paths, std::size_t horizon,
                                    std::uint64_t seed);

}  // namespace lqmfg
