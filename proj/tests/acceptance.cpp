// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lqmfg/cli.hpp"
#include "lqmfg/control.hpp"
#include "lqmfg/io.hpp"
#include "lqmfg/iteration.hpp"
#include "lqmfg/reference.hpp"
#include "lqmfg/simulate.hpp"
#include "lqmfg/update_operator.hpp"
#include "test_support.hpp"

using namespace lqmfg;
using namespace lqmfg::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* pattern, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string g3(double v) { return fmt("%.3g", v); }

// Records the first failure message; counts checks.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && first_failure_.empty()) first_failure_ = what;
    failed_ += !ok;
  }
  Outcome outcome(const std::string& summary) const {
    if (failed_ == 0)
      return {true, summary + " (" + std::to_string(checks_) + " checks)"};
    return {false, std::to_string(failed_) + "/" + std::to_string(checks_) +
                       " checks failed, first: " + first_failure_};
  }

 private:
  std::size_t checks_ = 0, failed_ = 0;
  std::string first_failure_;
};

struct Experiment {
  ValidatedModel model = validate_params(experiment_params());
  RiccatiGains gains = solve_riccati(model);
  IterationTrace reference;  // eps_s = 1e-8, all iterates kept
  std::map<double, IterationTrace> ladder;

  Experiment() {
    IterationConfig cfg;
    cfg.r = 0.6;
    cfg.eps_s = 1e-8;
    reference = run_policy_iteration(model, gains, cfg);
    for (double eps : {0.1, 0.05, 0.01, 0.005}) {
      cfg.eps_s = eps;
      ladder.emplace(eps, run_policy_iteration(model, gains, cfg));
    }
  }
  const LatentSeq& z_ref() const { return reference.final_iterate(); }
};

const Experiment& experiment() {
  static const Experiment instance;
  return instance;
}

Outcome riccati_correctness() {
  Checker c;
  Gen gen(1001);
  double worst_res = 0.0, worst_oracle = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto m = gen.model();
    const auto g = solve_riccati(validate_params(m));
    const double res = std::abs(dare_residual(g)) / std::max(1.0, g.beta);
    const double oracle =
        std::abs(g.p - reference::riccati_by_recursion(g.coeffs));
    worst_res = std::max(worst_res, res);
    worst_oracle = std::max(worst_oracle, oracle);
    c.expect(g.p > 0.0, "p not positive");
    c.expect(res <= 1e-12, "DARE residual " + g3(res));
    c.expect(oracle <= 1e-10, "recursion mismatch " + g3(oracle));
  }
  for (int i = 0; i < 100; ++i) {
    auto m = gen.model();
    m.a = 0.0;
    const auto g = solve_riccati(validate_params(m));
    c.expect(g.p == m.c_z, "a = 0 root differs from c_z");
  }
  return c.outcome("max scaled residual " + g3(worst_res) +
                   ", max recursion gap " + g3(worst_oracle));
}

Outcome costate_equivalence() {
  Checker c;
  Gen gen(1002);
  std::size_t before = 0, after = 0;
  double worst_lk = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto g = solve_riccati(validate_params(gen.model()));
    const auto seq = gen.seq(20);
    const double scale = g.coeffs.c_z * seq.sup_norm() /
                         (1.0 - g.coeffs.gamma * std::abs(g.h_p));
    for (std::size_t t = 0; t < seq.latency() + 5; ++t) {
      const double exact = costate(seq, g, t);
      for (std::size_t M : {std::size_t{1}, std::size_t{5}, std::size_t{40},
                            default_truncation(g, seq.sup_norm())}) {
        const double gap =
            std::abs(reference::costate_truncated(seq, g, t, M) - exact);
        const double bound = reference::costate_truncation_bound(seq, g, M);
        c.expect(gap <= bound * (1.0 + 1e-9) + 1e-13 * scale,
                 "truncated co-state outside remainder bound");
      }
      const double via_lk = -g.coeffs.c_z * l_k(seq, g, t);
      const double d = rel_diff(via_lk, costate(seq, g, t + 1));
      worst_lk = std::max(worst_lk, d);
      c.expect(d <= 1e-10, "l_k identity off by " + g3(d));
      ++(t < seq.latency() ? before : after);
    }
  }
  c.expect(before > 0 && after > 0, "a branch of l_k was not exercised");
  return c.outcome("l_k max relative gap " + g3(worst_lk) + " over " +
                   std::to_string(before) + "+" + std::to_string(after) +
                   " points");
}

Outcome latency_preservation() {
  Checker c;
  Gen gen(1003);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto m = gen.contracting_model();
    const auto g = solve_riccati(validate_params(m));
    const auto seq = gen.seq(20);
    const auto out = apply_T_latent(seq, g, m.nu0);
    c.expect(out.head().size() == seq.head().size() + 1, "head length");
    c.expect(out.r() == seq.r(), "ratio changed");
    c.expect(out(0) == m.nu0, "first element is not nu0");

    const std::size_t M = default_truncation(g, seq.sup_norm());
    const double bound = direct_truncation_bound(g, seq.sup_norm(), M);
    const auto direct = apply_T_direct(seq, g, m.nu0, 200, M);
    const double scale = seq.sup_norm() * (std::abs(g.h_p) + 1.0);
    for (std::size_t t = 0; t <= 200; ++t) {
      const double d = std::abs(out(t) - direct[t]);
      worst = std::max(worst, d);
      c.expect(d <= bound + 1e-13 * scale, "direct form mismatch");
    }
    for (std::size_t t = out.latency(); t < out.latency() + 5; ++t)
      c.expect(std::abs(direct[t + 1] - seq.r() * direct[t]) <=
                   1e-10 * std::max(1.0, std::abs(direct[t])),
               "tail ratio");
  }
  return c.outcome("max latent/direct gap " + g3(worst));
}

Outcome contraction() {
  Checker c;
  const auto& s = experiment();
  const double exp_ratio = contraction_estimate(s.gains, 20.0, 1000, 1004);
  c.expect(exp_ratio <= s.gains.T_p + 1e-9,
           "numerical-results ratio " + g3(exp_ratio) + " exceeds T_p");
  Gen gen(1005);
  int over = 0, over_negative_h = 0;
  double worst_excess = -1.0, worst_vs_lipschitz = -1.0;
  for (int i = 0; i < 20; ++i) {
    const auto m = gen.contracting_model();
    const auto g = solve_riccati(validate_params(m));
    const double ratio = contraction_estimate(g, m.nu0, 1000, 2000 + i);
    worst_excess = std::max(worst_excess, ratio - g.T_p);
    worst_vs_lipschitz = std::max(worst_vs_lipschitz, ratio - sup_norm_lipschitz(g));
    const bool ok = ratio <= g.T_p + 1e-9;
    over += !ok;
    over_negative_h += !ok && g.h_p < 0.0;
    c.expect(ok, "random model ratio exceeds T_p");
  }
  const std::string detail =
      "numerical-results ratio " + g3(exp_ratio) + " vs T_p " +
      g3(s.gains.T_p) + "; random models: " + std::to_string(over) +
      "/20 above T_p (" + std::to_string(over_negative_h) +
      " with h_p < 0), max(ratio - T_p) " + g3(worst_excess) +
      ", max(ratio - sup-norm Lipschitz) " + g3(worst_vs_lipschitz);
  auto o = c.outcome(detail);
  if (!o.pass) o.detail += "; " + detail;
  return o;
}

Outcome convergence() {
  Checker c;
  {
    const double nu0 = 6.0;
    const auto toy = validate_params(toy_params(nu0));
    const auto g = solve_riccati(toy);
    IterationConfig cfg;
    cfg.eps_s = 1e-6;
    cfg.r = 0.6;
    cfg.init_head = std::vector<double>{nu0, 4.0, -3.0, 8.0};
    const auto trace = run_policy_iteration(toy, g, cfg);
    c.expect(trace.terminated_by == Termination::StoppingRule, "toy did not stop");
    for (std::size_t j = 1; j < trace.deltas.size(); ++j)
      if (trace.deltas[j - 1] > 1e-12)
        c.expect(std::abs(trace.deltas[j] / trace.deltas[j - 1] - 1.0 / 3.0) <=
                     1e-6,
                 "toy delta ratio " + g3(trace.deltas[j] / trace.deltas[j - 1]));
    const double err =
        sup_distance(trace.final_iterate(), LatentSeq({nu0, 0.0}, cfg.r));
    c.expect(err <= cfg.eps_s, "toy limit error " + g3(err));
  }

  const auto& s = experiment();
  const auto& run = s.ladder.at(0.005);
  const double err = sup_distance(run.final_iterate(), s.z_ref());
  c.expect(run.terminated_by == Termination::StoppingRule, "run did not stop");
  c.expect(err <= 0.005, "final iterate error " + g3(err));

  const double gap = sup_distance(s.reference.iterates.front(), s.z_ref());
  const auto K = iteration_bound(s.gains, 0.005, gap);
  c.expect(run.k_star <= K, "stopped after the a-priori bound");
  for (std::size_t k = K; k < s.reference.iterates.size(); ++k)
    c.expect(sup_distance(s.reference.iterates[k], s.z_ref()) <= 0.005,
             "iterate " + std::to_string(k) + " past the bound is not within 0.005");

  const auto report = certify(run, s.gains, s.z_ref());
  c.expect(report.all_ok(), "certification failed");
  return c.outcome("k* = " + std::to_string(run.k_star) + ", bound K = " +
                   std::to_string(K) + " from gap " + g3(gap) +
                   ", error to reference " + g3(err) + ", fitted rate " +
                   fmt("%.4f", report.fitted_rate));
}

Outcome ladder_monotone() {
  Checker c;
  const auto& s = experiment();
  std::string detail = "distances";
  double prev = INFINITY;
  for (double eps : {0.1, 0.05, 0.01, 0.005}) {
    const double d = sup_distance(s.ladder.at(eps).final_iterate(), s.z_ref());
    detail += " " + g3(d);
    c.expect(d < prev, "distance did not decrease at eps_s = " + g3(eps));
    prev = d;
  }
  return c.outcome(detail);
}

// Per-replication mean of paired differences over `agents` shared agents,
// then mean / standard error across replications.
struct Paired {
  double mean = 0.0, se = 0.0;
  bool decreased() const { return mean > 2.0 * se; }
};

Paired paired(const PopulationResult& hi, const PopulationResult& lo,
              std::size_t agents, double norm) {
  std::vector<double> d;
  for (std::size_t r = 0; r < hi.replications; ++r) {
    double sum = 0.0;
    for (std::size_t n = 0; n < agents; ++n) sum += hi.cost(r, n) - lo.cost(r, n);
    d.push_back(sum / static_cast<double>(agents) / norm);
  }
  Paired p;
  for (double x : d) p.mean += x;
  p.mean /= static_cast<double>(d.size());
  double var = 0.0;
  for (double x : d) var += (x - p.mean) * (x - p.mean);
  var /= static_cast<double>(d.size() - 1);
  p.se = std::sqrt(var / static_cast<double>(d.size()));
  return p;
}

Outcome population_cost_ordering() {
  Checker c;
  const auto& s = experiment();
  PopulationConfig pc;
  pc.horizon = default_horizon(s.model->gamma);
  pc.replications = 20;
  pc.seed = 42;

  auto simulate = [&](double eps, std::size_t N) {
    pc.N = N;
    const ControlPolicy policy{s.ladder.at(eps).final_iterate(), s.gains};
    return simulate_population(policy, s.model, pc, 0);
  };
  std::map<std::size_t, PopulationResult> by_n;
  for (std::size_t N : {10, 100, 1000}) by_n.emplace(N, simulate(0.005, N));
  const double norm = by_n.at(1000).avg_cost;

  std::string detail = "normalized cost N=10/100/1000:";
  for (const auto& [N, res] : by_n) detail += " " + fmt("%.5f", res.avg_cost / norm);

  for (auto [small, large] : {std::pair<std::size_t, std::size_t>{10, 100},
                              std::pair<std::size_t, std::size_t>{100, 1000}}) {
    const auto p = paired(by_n.at(small), by_n.at(large), small, norm);
    const std::string label = "N " + std::to_string(small) + "->" +
                              std::to_string(large) + " diff " + g3(p.mean) +
                              " (" + g3(p.mean / p.se) + " SE)";
    detail += "; " + label;
    c.expect(p.decreased(), label);
  }

  std::map<double, PopulationResult> by_eps;
  for (double eps : {0.1, 0.05, 0.01}) by_eps.emplace(eps, simulate(eps, 1000));
  by_eps.emplace(0.005, by_n.at(1000));
  const std::vector<std::pair<double, double>> steps = {
      {0.1, 0.05}, {0.05, 0.01}, {0.01, 0.005}, {0.1, 0.005}};
  for (auto [hi, lo] : steps) {
    const auto p = paired(by_eps.at(hi), by_eps.at(lo), 1000, norm);
    const std::string label = "eps " + g3(hi) + "->" + g3(lo) + " diff " +
                              g3(p.mean) + " (" + g3(p.mean / p.se) + " SE)";
    detail += "; " + label;
    c.expect(p.decreased(), label);
  }
  return c.outcome(detail);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  Checker c;
  const auto dir = fs::temp_directory_path() / "lqmfg_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto p = experiment_params();
  const nlohmann::json doc = {
      {"model",
       {{"a", p.a}, {"b", p.b}, {"c_z", p.c_z}, {"c_u", p.c_u},
        {"gamma", p.gamma}, {"nu0", p.nu0}, {"sigma0_sq", p.sigma0_sq},
        {"sigma_w", p.sigma_w}}},
      {"solver", {{"r", 0.6}, {"epsilon_s", 0.005}}},
      {"simulation",
       {{"N", {10, 100, 300}}, {"replications", 8}, {"seed", 42}}}};
  const auto config = dir / "config.json";
  io::write_text(config, doc.dump(2));
  std::ostringstream out, err;
  c.expect(cli::cmd_solve(config, dir / "solve", out, err) == cli::kOk,
           "solve failed: " + err.str());
  const auto policy = dir / "solve" / "policy.json";
  c.expect(cli::cmd_simulate(config, policy, dir / "t1", 1, out, err) == cli::kOk,
           "simulate failed: " + err.str());
  c.expect(cli::cmd_simulate(config, policy, dir / "t4", 4, out, err) == cli::kOk,
           "simulate failed: " + err.str());
  std::size_t bytes = 0;
  for (const char* name : {"costs.csv", "mean_path.csv"}) {
    const auto a = slurp(dir / "t1" / name);
    const auto b = slurp(dir / "t4" / name);
    bytes += a.size();
    c.expect(!a.empty() && a == b, std::string(name) + " differs across thread counts");
  }
  fs::remove_all(dir);
  return c.outcome(std::to_string(bytes) + " bytes identical for 1 and 4 threads");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Riccati correctness", riccati_correctness},
      {"co-state and control equivalence", costate_equivalence},
      {"latency preservation", latency_preservation},
      {"contraction", contraction},
      {"convergence", convergence},
      {"mean-field ladder monotone", ladder_monotone},
      {"finite-population cost ordering", population_cost_ordering},
      {"simulation determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << " "
              << criteria[i].first << ": " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
