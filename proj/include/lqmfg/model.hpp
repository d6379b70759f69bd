#pragma once

#include <cstdint>
#include <vector>

#include "lqmfg/error.hpp"

namespace lqmfg {

/// Scalar primitives of the linear-quadratic mean-field game.
///
/// Dynamics: z_{t+1} = a z_t + b u_t + w_t, w_t ~ N(0, sigma_w^2),
/// z_0 ~ (nu0, sigma0_sq). Stage cost: c_z (z_t - zbar_t)^2 + c_u u_t^2,
/// discounted by gamma.
struct ModelParams {
  double a = 0.0;
  double b = 1.0;
  double c_z = 1.0;
  double c_u = 1.0;
  double gamma = 0.5;
  double nu0 = 0.0;
  double sigma0_sq = 0.0;
  double sigma_w = 0.0;
};

/// ModelParams that passed validate_params. Only validate_params constructs
/// one, so holding a ValidatedModel is proof that the invariants hold.
class ValidatedModel {
 public:
  const ModelParams& params() const noexcept { return params_; }
  const ModelParams* operator->() const noexcept { return &params_; }

 private:
  friend ValidatedModel validate_params(const ModelParams& params);
  explicit ValidatedModel(const ModelParams& params) : params_(params) {}
  ModelParams params_;
};

/// Returns every invariant ModelParams violates (empty when valid).
std::vector<ErrorCode> param_violations(const ModelParams& params);

/// Throws Error with the first violation's code; the message lists all.
ValidatedModel validate_params(const ModelParams& params);

/// Coefficients needed by the gain formulas. Kept next to the gains so that
/// operations taking only RiccatiGains can evaluate the co-state and operator.
struct GameCoefficients {
  double a = 0.0;
  double b = 1.0;
  double c_z = 1.0;
  double c_u = 1.0;
  double gamma = 0.5;
};

GameCoefficients coefficients_of(const ModelParams& params);

/// Steady-state solution of the discounted tracking problem.
struct RiccatiGains {
  GameCoefficients coeffs;
  double p = 0.0;      // positive DARE root
  double g_p = 0.0;    // control gain
  double h_p = 0.0;    // closed-loop gain
  double T_p = 0.0;    // contraction modulus of the mean-field update
  double alpha = 0.0;  // DARE linear coefficient
  double beta = 0.0;   // DARE constant (negated)
};

/// Solves p^2 + alpha p - beta = 0 in closed form and derives the gains.
RiccatiGains solve_riccati(const ValidatedModel& model);

/// Derives g_p, h_p, T_p from an externally supplied p. alpha and beta are
/// still computed from the coefficients.
RiccatiGains gains_from_p(const GameCoefficients& coeffs, double p);

/// p (p + alpha) - beta; zero at the root.
double dare_residual(const RiccatiGains& gains);

struct ContractionDiagnostic {
  bool holds = false;
  double T_p = 0.0;
};

/// Contraction condition T_p < 1.
ContractionDiagnostic check_contraction(const RiccatiGains& gains);

/// Throws AssumptionViolated unless T_p < 1.
void require_contraction(const RiccatiGains& gains);

/// |h_p| + |c_z b g_p| / (1 - gamma |h_p|), the sup-norm Lipschitz constant
/// of the mean-field update. Equals T_p when h_p >= 0 and exceeds it when
/// h_p < 0.
double sup_norm_lipschitz(const RiccatiGains& gains);

/// Consecutive-iterate threshold eps_s (1 - T_p) / T_p used as the stopping
/// rule of the policy iteration.
double stopping_threshold(const RiccatiGains& gains, double eps_s);

/// K(eps_s) = ceil((log eps_s - log initial_gap) / log T_p), clamped at 0.
/// More than K exact iterations bring the sup-distance to the fixed point
/// below eps_s.
std::int64_t iteration_bound(const RiccatiGains& gains, double eps_s,
                             double initial_gap);

}  // namespace lqmfg
