#include "lqmfg/iteration.hpp"

#include <algorithm>
#include <cmath>

#include "lqmfg/update_operator.hpp"

namespace lqmfg {

std::string_view to_string(Termination t) {
  return t == Termination::StoppingRule ? "StoppingRule" : "MaxIter";
}

IterationTrace run_policy_iteration(const ValidatedModel& model,
                                    const RiccatiGains& gains,
                                    const IterationConfig& cfg) {
  require_contraction(gains);
  if (!(cfg.eps_s > 0.0))
    throw Error(ErrorCode::InvalidArgument, "eps_s must be positive");
  if (cfg.max_iter == 0)
    throw Error(ErrorCode::InvalidArgument, "max_iter must be positive");
  const double nu0 = model->nu0;
  std::vector<double> head = cfg.init_head.value_or(std::vector<double>{nu0});
  if (head.empty() || head.front() != nu0)
    throw Error(ErrorCode::InvalidArgument,
                "initial head must start with nu0");

  IterationTrace trace;
  trace.eps_s = cfg.eps_s;
  trace.threshold = stopping_threshold(gains, cfg.eps_s);
  trace.iterates.emplace_back(std::move(head), cfg.r);

  while (true) {
    LatentSeq next = apply_T_latent(trace.iterates.back(), gains, nu0);
    const double delta = sup_distance(next, trace.iterates.back());
    trace.deltas.push_back(delta);
    if (!cfg.keep_iterates && trace.iterates.size() == 2)
      trace.iterates.erase(trace.iterates.begin());
    trace.iterates.push_back(std::move(next));
    ++trace.k_star;
    if (delta <= trace.threshold) {
      trace.terminated_by = Termination::StoppingRule;
      break;
    }
    if (trace.k_star >= cfg.max_iter) {
      trace.terminated_by = Termination::MaxIter;
      break;
    }
  }
  return trace;
}

namespace {

double log_linear_rate(const std::vector<double>& deltas) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    if (!(deltas[j] > 0.0)) continue;
    const double x = static_cast<double>(j);
    const double y = std::log(deltas[j]);
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (n < 2) return 0.0;
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return std::exp(slope);
}

}  // namespace

CertificationReport certify(const IterationTrace& trace,
                            const RiccatiGains& gains,
                            const LatentSeq& reference) {
  CertificationReport rep;
  std::vector<double> errors;
  errors.reserve(trace.iterates.size());
  for (const auto& it : trace.iterates)
    errors.push_back(sup_distance(it, reference));

  for (std::size_t j = 0; j + 1 < errors.size(); ++j) {
    if (errors[j] == 0.0) continue;
    const double ratio = errors[j + 1] / errors[j];
    rep.contraction_ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  rep.ratios_ok = rep.max_ratio <= gains.T_p + 1e-9;

  rep.fitted_rate = log_linear_rate(trace.deltas);
  rep.rate_ok = rep.fitted_rate <= gains.T_p + 1e-2;

  rep.final_error = errors.back();
  rep.final_ok = rep.final_error < trace.eps_s;
  return rep;
}

}  // namespace lqmfg
