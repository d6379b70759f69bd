#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lqmfg/control.hpp"
#include "lqmfg/iteration.hpp"
#include "lqmfg/model.hpp"
#include "lqmfg/simulate.hpp"

namespace lqmfg::io {

/// Malformed or unreadable input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverSection {
  double r = 0.6;
  double epsilon_s = 0.005;
  std::size_t max_iter = 100000;
  std::optional<std::vector<double>> init_head;
};

struct SimulationSection {
  std::vector<std::size_t> N{100};
  std::optional<std::size_t> horizon;  // default_horizon(gamma) when absent
  std::size_t replications = 20;
  std::uint64_t seed = 0;
};

/// One JSON document with "model", "solver" and "simulation" objects.
struct ExperimentConfig {
  ModelParams model;
  SolverSection solver;
  SimulationSection simulation;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

IterationConfig iteration_config(const SolverSection& solver);

nlohmann::json policy_to_json(const ControlPolicy& policy);
/// Reads head, r and the stored gains; coefficients come from `coeffs`.
ControlPolicy policy_from_json(const nlohmann::json& doc,
                               const GameCoefficients& coeffs);
ControlPolicy load_policy(const std::filesystem::path& path,
                          const GameCoefficients& coeffs);

/// %.17g, enough digits to round-trip any double.
std::string format_real(double value);

void write_text(const std::filesystem::path& path, const std::string& text);

/// iteration,t,value rows for every retained iterate.
std::string mean_field_csv(const IterationTrace& trace);
nlohmann::json summary_json(const IterationTrace& trace,
                            const RiccatiGains& gains);

/// N,eps_s,replication,agent,discounted_cost rows (header included when
/// `with_header`).
std::string costs_csv(const PopulationResult& result, double eps_s,
                      bool with_header = true);
/// replication,t,empirical_mean rows.
std::string mean_path_csv(const PopulationResult& result);

}  // namespace lqmfg::io
