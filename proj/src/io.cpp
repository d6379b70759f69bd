#include "lqmfg/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lqmfg::io {

using nlohmann::json;

namespace {

const json& section(const json& doc, const char* name) {
  if (!doc.contains(name) || !doc.at(name).is_object())
    throw InputError(std::string("config is missing object \"") + name + "\"");
  return doc.at(name);
}

double real_field(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number())
    throw InputError(std::string("missing or non-numeric field \"") + key +
                     "\"");
  return obj.at(key).get<double>();
}

std::size_t count_field(const json& v, const char* key) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw InputError(std::string("field \"") + key +
                     "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

std::vector<double> real_array(const json& v, const char* key) {
  if (!v.is_array()) throw InputError(std::string(key) + " must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number())
      throw InputError(std::string(key) + " must contain numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw InputError("config must be a JSON object");
  ExperimentConfig cfg;

  const auto& m = section(doc, "model");
  cfg.model.a = real_field(m, "a");
  cfg.model.b = real_field(m, "b");
  cfg.model.c_z = real_field(m, "c_z");
  cfg.model.c_u = real_field(m, "c_u");
  cfg.model.gamma = real_field(m, "gamma");
  cfg.model.nu0 = real_field(m, "nu0");
  cfg.model.sigma0_sq = real_field(m, "sigma0_sq");
  cfg.model.sigma_w = real_field(m, "sigma_w");

  if (doc.contains("solver")) {
    const auto& s = section(doc, "solver");
    if (s.contains("r")) cfg.solver.r = real_field(s, "r");
    if (s.contains("epsilon_s"))
      cfg.solver.epsilon_s = real_field(s, "epsilon_s");
    if (s.contains("max_iter"))
      cfg.solver.max_iter = count_field(s.at("max_iter"), "max_iter");
    if (s.contains("init_head"))
      cfg.solver.init_head = real_array(s.at("init_head"), "init_head");
  }

  if (doc.contains("simulation")) {
    const auto& s = section(doc, "simulation");
    if (s.contains("N")) {
      const auto& n = s.at("N");
      cfg.simulation.N.clear();
      if (n.is_array()) {
        for (const auto& e : n) cfg.simulation.N.push_back(count_field(e, "N"));
      } else {
        cfg.simulation.N.push_back(count_field(n, "N"));
      }
      if (cfg.simulation.N.empty()) throw InputError("N must not be empty");
      for (auto v : cfg.simulation.N)
        if (v < 2) throw InputError("N must be at least 2");
    }
    if (s.contains("horizon"))
      cfg.simulation.horizon = count_field(s.at("horizon"), "horizon");
    if (s.contains("replications"))
      cfg.simulation.replications =
          count_field(s.at("replications"), "replications");
    if (s.contains("seed"))
      cfg.simulation.seed = s.at("seed").is_number_unsigned()
                                ? s.at("seed").get<std::uint64_t>()
                                : count_field(s.at("seed"), "seed");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_json(path));
}

IterationConfig iteration_config(const SolverSection& solver) {
  IterationConfig cfg;
  cfg.eps_s = solver.epsilon_s;
  cfg.r = solver.r;
  cfg.init_head = solver.init_head;
  cfg.max_iter = solver.max_iter;
  return cfg;
}

json policy_to_json(const ControlPolicy& policy) {
  const auto head = policy.mf.head();
  return json{
      {"head", std::vector<double>(head.begin(), head.end())},
      {"r", policy.mf.r()},
      {"gains",
       {{"p", policy.gains.p},
        {"g_p", policy.gains.g_p},
        {"h_p", policy.gains.h_p},
        {"T_p", policy.gains.T_p}}},
  };
}

ControlPolicy policy_from_json(const json& doc,
                               const GameCoefficients& coeffs) {
  if (!doc.is_object() || !doc.contains("head") || !doc.contains("gains"))
    throw InputError("policy must contain \"head\", \"r\" and \"gains\"");
  auto head = real_array(doc.at("head"), "head");
  const double r = real_field(doc, "r");
  const auto& g = section(doc, "gains");

  RiccatiGains gains = gains_from_p(coeffs, real_field(g, "p"));
  gains.g_p = real_field(g, "g_p");
  gains.h_p = real_field(g, "h_p");
  gains.T_p = real_field(g, "T_p");
  try {
    return ControlPolicy{LatentSeq(std::move(head), r), gains};
  } catch (const Error& e) {
    throw InputError(std::string("invalid policy: ") + e.what());
  }
}

ControlPolicy load_policy(const std::filesystem::path& path,
                          const GameCoefficients& coeffs) {
  return policy_from_json(read_json(path), coeffs);
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
}

std::string mean_field_csv(const IterationTrace& trace) {
  std::ostringstream os;
  os << "iteration,t,value\n";
  for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
    const auto head = trace.iterates[i].head();
    const std::size_t k = trace.iteration_of(i);
    for (std::size_t t = 0; t < head.size(); ++t)
      os << k << ',' << t << ',' << format_real(head[t]) << '\n';
  }
  return os.str();
}

json summary_json(const IterationTrace& trace, const RiccatiGains& gains) {
  return json{
      {"k_star", trace.k_star},
      {"final_delta", trace.deltas.empty() ? 0.0 : trace.deltas.back()},
      {"threshold", trace.threshold},
      {"epsilon_s", trace.eps_s},
      {"T_p", gains.T_p},
      {"terminated_by", std::string(to_string(trace.terminated_by))},
  };
}

std::string costs_csv(const PopulationResult& result, double eps_s,
                      bool with_header) {
  std::ostringstream os;
  if (with_header) os << "N,eps_s,replication,agent,discounted_cost\n";
  const std::string eps = format_real(eps_s);
  for (std::size_t rep = 0; rep < result.replications; ++rep)
    for (std::size_t n = 0; n < result.N; ++n)
      os << result.N << ',' << eps << ',' << rep << ',' << n << ','
         << format_real(result.cost(rep, n)) << '\n';
  return os.str();
}

std::string mean_path_csv(const PopulationResult& result) {
  std::ostringstream os;
  os << "replication,t,empirical_mean\n";
  for (std::size_t rep = 0; rep < result.replications; ++rep)
    for (std::size_t t = 0; t <= result.horizon; ++t)
      os << rep << ',' << t << ',' << format_real(result.mean_state(rep, t))
         << '\n';
  return os.str();
}

}  // namespace lqmfg::io
