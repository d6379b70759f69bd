#include "lqmfg/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "lqmfg/io.hpp"
#include "lqmfg/iteration.hpp"
#include "lqmfg/simulate.hpp"

namespace lqmfg::cli {

namespace fs = std::filesystem;

namespace {

struct LoadedModel {
  io::ExperimentConfig config;
  ValidatedModel model;
  RiccatiGains gains;
};

// Reads and validates a config; prints the reason and returns nullopt on
// failure.
std::optional<LoadedModel> load_model(const fs::path& path, std::ostream& err) {
  try {
    auto cfg = io::load_config(path);
    auto model = validate_params(cfg.model);
    auto gains = solve_riccati(model);
    return LoadedModel{std::move(cfg), model, gains};
  } catch (const io::InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return std::nullopt;
}

void print_gains(const RiccatiGains& g, std::ostream& out) {
  out << "p   = " << io::format_real(g.p) << '\n'
      << "g_p = " << io::format_real(g.g_p) << '\n'
      << "h_p = " << io::format_real(g.h_p) << '\n'
      << "T_p = " << io::format_real(g.T_p) << '\n';
}

}  // namespace

int cmd_validate(const fs::path& config, std::ostream& out, std::ostream& err) {
  auto loaded = load_model(config, err);
  if (!loaded) return kInvalidInput;
  print_gains(loaded->gains, out);
  const auto diag = check_contraction(loaded->gains);
  out << "assumption T_p < 1: " << (diag.holds ? "holds" : "violated") << '\n';
  const double lipschitz = sup_norm_lipschitz(loaded->gains);
  out << "sup-norm Lipschitz constant = " << io::format_real(lipschitz) << '\n';
  if (diag.holds && lipschitz >= 1.0)
    out << "warning: h_p < 0 and the update is not a sup-norm contraction\n";
  return diag.holds ? kOk : kAssumptionViolated;
}

int cmd_solve(const fs::path& config, const fs::path& out_dir,
              std::ostream& out, std::ostream& err) {
  auto loaded = load_model(config, err);
  if (!loaded) return kInvalidInput;
  const auto& gains = loaded->gains;
  if (!check_contraction(gains).holds) {
    err << "error: T_p = " << io::format_real(gains.T_p)
        << " is not below 1; the update is not a contraction\n";
    return kAssumptionViolated;
  }

  try {
    const auto trace = run_policy_iteration(
        loaded->model, gains, io::iteration_config(loaded->config.solver));
    fs::create_directories(out_dir);
    const ControlPolicy policy{trace.final_iterate(), gains};
    io::write_text(out_dir / "policy.json",
                   io::policy_to_json(policy).dump(2) + "\n");
    io::write_text(out_dir / "mean_field.csv", io::mean_field_csv(trace));
    io::write_text(out_dir / "summary.json",
                   io::summary_json(trace, gains).dump(2) + "\n");
    out << "k* = " << trace.k_star << ", final delta = "
        << io::format_real(trace.deltas.back()) << ", threshold = "
        << io::format_real(trace.threshold) << ", "
        << to_string(trace.terminated_by) << '\n';
    return trace.terminated_by == Termination::StoppingRule ? kOk
                                                            : kMaxIterReached;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const io::InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInvalidInput;
}

int cmd_simulate(const fs::path& config, const fs::path& policy_path,
                 const fs::path& out_dir, unsigned threads, std::ostream& out,
                 std::ostream& err) {
  auto loaded = load_model(config, err);
  if (!loaded) return kInvalidInput;
  const auto& sim = loaded->config.simulation;
  try {
    const auto policy = io::load_policy(policy_path, loaded->gains.coeffs);
    const double p = loaded->gains.p;
    if (std::abs(policy.gains.p - p) > 1e-9 * std::max(1.0, p)) {
      err << "error: policy gains do not match the configured model\n";
      return kInvalidInput;
    }
    PopulationConfig pc;
    pc.horizon = sim.horizon.value_or(default_horizon(loaded->model->gamma));
    pc.replications = sim.replications;
    pc.seed = sim.seed;

    fs::create_directories(out_dir);
    std::string costs;
    std::optional<PopulationResult> largest;
    for (std::size_t i = 0; i < sim.N.size(); ++i) {
      pc.N = sim.N[i];
      auto res = simulate_population(policy, loaded->model, pc, threads);
      costs += io::costs_csv(res, loaded->config.solver.epsilon_s, i == 0);
      out << "N = " << res.N << ": average discounted cost "
          << io::format_real(res.avg_cost) << '\n';
      if (!largest || res.N >= largest->N) largest = std::move(res);
    }
    io::write_text(out_dir / "costs.csv", costs);
    io::write_text(out_dir / "mean_path.csv", io::mean_path_csv(*largest));
    return kOk;
  } catch (const io::InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInvalidInput;
}

int cmd_bound(const fs::path& config, double epsilon, double initial_gap,
              std::ostream& out, std::ostream& err) {
  auto loaded = load_model(config, err);
  if (!loaded) return kInvalidInput;
  if (!(epsilon > 0.0) || !(initial_gap > 0.0)) {
    err << "error: --epsilon and --initial-gap must be positive\n";
    return kInvalidInput;
  }
  if (!check_contraction(loaded->gains).holds) {
    err << "error: T_p = " << io::format_real(loaded->gains.T_p)
        << " is not below 1\n";
    return kAssumptionViolated;
  }
  out << iteration_bound(loaded->gains, epsilon, initial_gap) << '\n';
  return kOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mean-field equilibrium solver for scalar LQ mean-field games"};
  app.require_subcommand(1);

  std::string config, out_dir, policy;
  double epsilon = 0.0, gap = 0.0;
  unsigned threads = 1;

  auto* validate = app.add_subcommand("validate", "Check parameters and gains");
  validate->add_option("-c,--config", config, "Experiment config")->required();

  auto* solve = app.add_subcommand("solve", "Run the policy iteration");
  solve->add_option("-c,--config", config, "Experiment config")->required();
  solve->add_option("-o,--out", out_dir, "Output directory")->required();

  auto* simulate =
      app.add_subcommand("simulate", "Simulate finite populations");
  simulate->add_option("-c,--config", config, "Experiment config")->required();
  simulate->add_option("--policy", policy, "policy.json from solve")
      ->required();
  simulate->add_option("-o,--out", out_dir, "Output directory")->required();
  simulate->add_option("--threads", threads,
                       "Worker threads (0 = hardware concurrency)");

  auto* bound = app.add_subcommand("bound", "Iteration bound K(eps)");
  bound->add_option("-c,--config", config, "Experiment config")->required();
  bound->add_option("--epsilon", epsilon, "Target accuracy")->required();
  bound->add_option("--initial-gap", gap, "Initial sup-distance to z*")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  if (validate->parsed()) return cmd_validate(config, out, err);
  if (solve->parsed()) return cmd_solve(config, out_dir, out, err);
  if (simulate->parsed())
    return cmd_simulate(config, policy, out_dir, threads, out, err);
  return cmd_bound(config, epsilon, gap, out, err);
}

}  // namespace lqmfg::cli
