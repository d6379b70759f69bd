#include "lqmfg/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lqmfg {

double tail_denominator(const RiccatiGains& gains, double r) {
  const double d = 1.0 - gains.coeffs.gamma * gains.h_p * r;
  if (!(std::abs(d) > kDenominatorGuard)) {
    throw Error(ErrorCode::DegenerateDenominator,
                "1 - gamma h_p r = " + std::to_string(d));
  }
  return d;
}

double costate(const LatentSeq& seq, const RiccatiGains& gains,
               std::size_t t) {
  const double c_z = gains.coeffs.c_z;
  const double gh = gains.coeffs.gamma * gains.h_p;
  const double denom = tail_denominator(gains, seq.r());
  const std::size_t tau = seq.latency();
  if (t >= tau) return -c_z * seq(t) / denom;

  auto head = seq.head();
  double sum = 0.0;
  double w = 1.0;
  for (std::size_t s = 0; s < tau - t; ++s) {
    sum += w * head[t + s];
    w *= gh;
  }
  sum += w * head[tau] / denom;
  return -c_z * sum;
}

std::vector<double> costate_path(const LatentSeq& seq,
                                 const RiccatiGains& gains, std::size_t last) {
  const double c_z = gains.coeffs.c_z;
  const double gh = gains.coeffs.gamma * gains.h_p;
  const double denom = tail_denominator(gains, seq.r());
  const std::size_t tau = seq.latency();
  const std::size_t n = std::max(last, tau) + 1;

  std::vector<double> lambda(n);
  for (std::size_t t = tau; t < n; ++t) lambda[t] = -c_z * seq(t) / denom;
  auto head = seq.head();
  for (std::size_t t = tau; t-- > 0;)
    lambda[t] = gh * lambda[t + 1] - c_z * head[t];
  lambda.resize(last + 1);
  return lambda;
}

double control_action(const ControlPolicy& policy, double z, std::size_t t) {
  const auto& g = policy.gains;
  return g.g_p * (g.coeffs.a * g.p * z + costate(policy.mf, g, t + 1));
}

namespace {

// Closed-loop factor of the state under the policy: a + b g_p a p. Equals
// h_p when the gains are consistent with the coefficients.
double closed_loop_factor(const RiccatiGains& g, const ModelParams& params) {
  return params.a + params.b * g.g_p * params.a * g.p;
}

}  // namespace

std::size_t cost_truncation_horizon(const ControlPolicy& policy,
                                    const LatentSeq& target,
                                    const ModelParams& params,
                                    double tail_tol) {
  const auto& g = policy.gains;
  require_contraction(g);
  if (!(tail_tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "tail_tol must be positive");
  const double k = std::abs(closed_loop_factor(g, params));
  if (!(k < 1.0))
    throw Error(ErrorCode::AssumptionViolated,
                "closed-loop factor is not stable");
  tail_denominator(g, policy.mf.r());

  const double gamma = params.gamma;
  const double lam =
      g.coeffs.c_z * policy.mf.sup_norm() / (1.0 - gamma * std::abs(g.h_p));
  const double mean = std::abs(params.nu0) +
                      std::abs(params.b * g.g_p) * lam / (1.0 - k);
  const double var = params.sigma0_sq +
                     params.sigma_w * params.sigma_w / (1.0 - k * k);
  const double fb = g.g_p * params.a * g.p;
  const double ubar = std::abs(g.g_p) * (std::abs(params.a * g.p) * mean + lam);
  const double dev = mean + target.sup_norm();
  const double stage = params.c_z * (var + dev * dev) +
                       params.c_u * (fb * fb * var + ubar * ubar);
  if (stage == 0.0) return 1;

  auto tail = [&](std::size_t T) {
    return stage * std::pow(gamma, static_cast<double>(T)) / (1.0 - gamma);
  };
  const double guess =
      std::ceil(std::log(tail_tol * (1.0 - gamma) / stage) / std::log(gamma));
  std::size_t T = guess > 1.0 ? static_cast<std::size_t>(guess) - 1 : 1;
  while (tail(T) >= tail_tol) ++T;
  return T;
}

double evaluate_cost(const ControlPolicy& policy, const LatentSeq& target,
                     const ModelParams& params, double tail_tol) {
  const std::size_t horizon =
      cost_truncation_horizon(policy, target, params, tail_tol);
  const auto& g = policy.gains;
  const auto lambda = costate_path(policy.mf, g, horizon);
  const double k = closed_loop_factor(g, params);
  const double fb = g.g_p * params.a * g.p;
  const double noise_var = params.sigma_w * params.sigma_w;

  double m = params.nu0;
  double v = params.sigma0_sq;
  double discount = 1.0;
  double total = 0.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    const double ubar = g.g_p * (params.a * g.p * m + lambda[t + 1]);
    const double dev = m - target(t);
    total += discount * (params.c_z * (v + dev * dev) +
                         params.c_u * (fb * fb * v + ubar * ubar));
    m = params.a * m + params.b * ubar;
    v = k * k * v + noise_var;
    discount *= params.gamma;
  }
  return total;
}

}  // namespace lqmfg
