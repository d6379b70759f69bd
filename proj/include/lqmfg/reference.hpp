#pragma once

#include <cstddef>
#include <vector>

#include "lqmfg/model.hpp"
#include "lqmfg/sequence.hpp"

namespace lqmfg::reference {

/// Time-varying solution of the finite-horizon discounted tracking problem.
/// Index t runs 0..horizon for p and lambda (entry `horizon` holds the
/// terminal values) and 0..horizon-1 for the control terms, with
/// u_t = feedback[t] * z_t + feedforward[t].
struct SweepResult {
  std::vector<double> p;
  std::vector<double> lambda;
  std::vector<double> feedback;
  std::vector<double> feedforward;
};

/// Runs the p_t, lambda_t and u_t recursions backward from t = horizon:
///   u_t      = -gamma b (p_{t+1} a z_t + lambda_{t+1}) / (c_u + gamma b^2 p_{t+1})
///   lambda_t = gamma a (1 - gamma p_{t+1} b^2 / (c_u + gamma b^2 p_{t+1}))
///              lambda_{t+1} - c_z zbar_t
///   p_t      = gamma a^2 p_{t+1} + c_z
///              - gamma^2 a^2 b^2 p_{t+1}^2 / (c_u + gamma b^2 p_{t+1})
SweepResult backward_sweep(const ValidatedModel& model, const LatentSeq& target,
                           std::size_t horizon, double terminal_p,
                           double terminal_lambda);

/// One backward step of the p recursion.
double riccati_step(const GameCoefficients& c, double p_next);

/// Iterates riccati_step from p = 0 until successive values differ by less
/// than tol (or max_steps is reached). The limit is the steady-state p.
double riccati_by_recursion(const GameCoefficients& c, double tol = 1e-14,
                            std::size_t max_steps = 10'000'000);

/// -c_z sum_{s < M} (gamma h_p)^s x_{t+s}.
double costate_truncated(const LatentSeq& seq, const RiccatiGains& gains,
                         std::size_t t, std::size_t M);

/// Remainder bound of costate_truncated:
/// c_z (gamma |h_p|)^M max|head| / (1 - gamma |h_p|).
double costate_truncation_bound(const LatentSeq& seq, const RiccatiGains& gains,
                                std::size_t M);

}  // namespace lqmfg::reference
