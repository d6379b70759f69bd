#pragma once

#include <cstddef>
#include <vector>

#include "lqmfg/model.hpp"
#include "lqmfg/sequence.hpp"

namespace lqmfg {

/// Guard on |1 - gamma h_p r|, the denominator of the co-state tail sum.
inline constexpr double kDenominatorGuard = 1e-12;

/// Forward-in-time cost-minimizing control for a latent mean-field.
/// u_t = g_p (a p z_t + lambda_{t+1}), lambda the co-state of `mf`.
struct ControlPolicy {
  LatentSeq mf;
  RiccatiGains gains;
};

/// 1 - gamma h_p r, checked against kDenominatorGuard.
double tail_denominator(const RiccatiGains& gains, double r);

/// Co-state lambda_t = -c_z sum_s (gamma h_p)^s x_{t+s} in closed form.
double costate(const LatentSeq& seq, const RiccatiGains& gains, std::size_t t);

/// lambda_0 .. lambda_{last}. Uses the finite backward recursion over the
/// head, which costs O(last + tau) instead of O(last * tau).
std::vector<double> costate_path(const LatentSeq& seq,
                                 const RiccatiGains& gains, std::size_t last);

double control_action(const ControlPolicy& policy, double z, std::size_t t);

/// Smallest horizon T_h such that C gamma^T_h / (1 - gamma) < tail_tol, where
/// C bounds the expected stage cost of `policy` against `target`.
std::size_t cost_truncation_horizon(const ControlPolicy& policy,
                                    const LatentSeq& target,
                                    const ModelParams& params, double tail_tol);

/// Discounted expected cost J(policy, target) from the exact first and
/// second moment recursions, truncated with tail error below tail_tol.
double evaluate_cost(const ControlPolicy& policy, const LatentSeq& target,
                     const ModelParams& params, double tail_tol = 1e-10);

}  // namespace lqmfg
