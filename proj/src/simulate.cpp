#include "lqmfg/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "lqmfg/rng.hpp"

namespace lqmfg {

std::size_t default_horizon(double gamma) {
  std::size_t T = 0;
  double g = 1.0;
  while (g >= 1e-6) {
    g *= gamma;
    ++T;
  }
  return T;
}

namespace {

// Feedforward part of u_t = g_p (a p z + lambda_{t+1}) for t = 0..horizon.
struct PolicyTable {
  double feedback;
  std::vector<double> feedforward;
};

PolicyTable tabulate(const ControlPolicy& policy, std::size_t horizon) {
  const auto& g = policy.gains;
  const auto lambda = costate_path(policy.mf, g, horizon + 1);
  PolicyTable table{g.g_p * g.coeffs.a * g.p, std::vector<double>(horizon + 1)};
  for (std::size_t t = 0; t <= horizon; ++t)
    table.feedforward[t] = g.g_p * lambda[t + 1];
  return table;
}

void simulate_replication(const PolicyTable& table, const ModelParams& m,
                          const PopulationConfig& cfg, std::size_t rep,
                          double* costs, double* mean_path) {
  const std::size_t N = cfg.N;
  const double sigma0 = std::sqrt(m.sigma0_sq);
  std::vector<double> z(N);
  std::vector<StreamRng> noise;
  noise.reserve(N);
  for (std::size_t n = 0; n < N; ++n) {
    StreamRng init(cfg.seed, rep, n, StreamPurpose::InitialState);
    z[n] = m.nu0 + sigma0 * init.next_normal();
    noise.emplace_back(cfg.seed, rep, n, StreamPurpose::Noise);
  }
  std::fill(costs, costs + N, 0.0);

  const double inv_others = 1.0 / static_cast<double>(N - 1);
  double discount = 1.0;
  for (std::size_t t = 0; t <= cfg.horizon; ++t) {
    double total = 0.0;
    for (std::size_t n = 0; n < N; ++n) total += z[n];
    mean_path[t] = total / static_cast<double>(N);
    for (std::size_t n = 0; n < N; ++n) {
      const double others = (total - z[n]) * inv_others;
      const double u = table.feedback * z[n] + table.feedforward[t];
      const double dev = z[n] - others;
      costs[n] += discount * (m.c_z * dev * dev + m.c_u * u * u);
      z[n] = m.a * z[n] + m.b * u + m.sigma_w * noise[n].next_normal();
    }
    discount *= m.gamma;
  }
}

}  // namespace

PopulationResult simulate_population(const ControlPolicy& policy,
                                     const ValidatedModel& model,
                                     const PopulationConfig& cfg,
                                     unsigned threads) {
  if (cfg.N < 2)
    throw Error(ErrorCode::InvalidArgument, "population needs N >= 2");
  if (cfg.horizon < 1 || cfg.replications < 1)
    throw Error(ErrorCode::InvalidArgument,
                "horizon and replications must be positive");

  const auto table = tabulate(policy, cfg.horizon);
  PopulationResult res;
  res.N = cfg.N;
  res.horizon = cfg.horizon;
  res.replications = cfg.replications;
  res.per_agent_costs.resize(cfg.replications * cfg.N);
  res.mean_paths.resize(cfg.replications * (cfg.horizon + 1));

  auto run = [&](std::size_t rep) {
    simulate_replication(table, model.params(), cfg, rep,
                         res.per_agent_costs.data() + rep * cfg.N,
                         res.mean_paths.data() + rep * (cfg.horizon + 1));
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, cfg.replications));
  if (threads <= 1) {
    for (std::size_t rep = 0; rep < cfg.replications; ++rep) run(rep);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back([&] {
        for (std::size_t rep = next++; rep < cfg.replications; rep = next++)
          run(rep);
      });
    }
  }

  // Fixed summation order keeps avg_cost independent of scheduling.
  res.avg_cost = std::accumulate(res.per_agent_costs.begin(),
                                 res.per_agent_costs.end(), 0.0) /
                 static_cast<double>(res.per_agent_costs.size());
  return res;
}

std::vector<double> empirical_mean_path(const PopulationResult& result,
                                        std::size_t replication) {
  if (replication >= result.replications)
    throw Error(ErrorCode::IndexOutOfRange, "replication index out of range");
  const auto first = result.mean_paths.begin() +
                     static_cast<std::ptrdiff_t>(replication *
                                                 (result.horizon + 1));
  return {first, first + static_cast<std::ptrdiff_t>(result.horizon + 1)};
}

CostEstimate simulate_generic_agent(const ControlPolicy& policy,
                                    const LatentSeq& target,
                                    const ValidatedModel& model,
                                    std::size_t n_paths, std::size_t horizon,
                                    std::uint64_t seed) {
  if (n_paths < 2)
    throw Error(ErrorCode::InvalidArgument, "need at least two paths");
  const auto& m = model.params();
  const auto table = tabulate(policy, horizon);
  std::vector<double> ref(horizon + 1);
  for (std::size_t t = 0; t <= horizon; ++t) ref[t] = target(t);
  const double sigma0 = std::sqrt(m.sigma0_sq);

  // Welford accumulation.
  double mean = 0.0, m2 = 0.0;
  for (std::size_t path = 0; path < n_paths; ++path) {
    StreamRng init(seed, 0, path, StreamPurpose::InitialState);
    StreamRng noise(seed, 0, path, StreamPurpose::Noise);
    double z = m.nu0 + sigma0 * init.next_normal();
    double cost = 0.0;
    double discount = 1.0;
    for (std::size_t t = 0; t <= horizon; ++t) {
      const double u = table.feedback * z + table.feedforward[t];
      const double dev = z - ref[t];
      cost += discount * (m.c_z * dev * dev + m.c_u * u * u);
      z = m.a * z + m.b * u + m.sigma_w * noise.next_normal();
      discount *= m.gamma;
    }
    const double delta = cost - mean;
    mean += delta / static_cast<double>(path + 1);
    m2 += delta * (cost - mean);
  }
  const double n = static_cast<double>(n_paths);
  return {mean, std::sqrt(m2 / (n - 1.0) / n)};
}

}  // namespace lqmfg
