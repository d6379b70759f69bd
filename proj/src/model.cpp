#include "lqmfg/model.hpp"

#include <cmath>
#include <string>

namespace lqmfg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroControlCoefficient: return "ZeroControlCoefficient";
    case ErrorCode::NonPositiveStateCost: return "NonPositiveStateCost";
    case ErrorCode::NonPositiveControlCost: return "NonPositiveControlCost";
    case ErrorCode::DiscountOutOfRange: return "DiscountOutOfRange";
    case ErrorCode::NegativeInitialVariance: return "NegativeInitialVariance";
    case ErrorCode::NegativeNoiseStd: return "NegativeNoiseStd";
    case ErrorCode::NonFiniteParameter: return "NonFiniteParameter";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::RatioMismatch: return "RatioMismatch";
    case ErrorCode::InvalidSequence: return "InvalidSequence";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
  }
  return "Unknown";
}

std::vector<ErrorCode> param_violations(const ModelParams& m) {
  std::vector<ErrorCode> out;
  for (double v : {m.a, m.b, m.c_z, m.c_u, m.gamma, m.nu0, m.sigma0_sq,
                   m.sigma_w}) {
    if (!std::isfinite(v)) {
      out.push_back(ErrorCode::NonFiniteParameter);
      return out;
    }
  }
  if (m.b == 0.0) out.push_back(ErrorCode::ZeroControlCoefficient);
  if (!(m.c_z > 0.0)) out.push_back(ErrorCode::NonPositiveStateCost);
  if (!(m.c_u > 0.0)) out.push_back(ErrorCode::NonPositiveControlCost);
  // gamma = 0 is admissible as a value but leaves the DARE undefined
  // (division by gamma b^2), so it is rejected together with gamma >= 1.
  if (!(m.gamma > 0.0 && m.gamma < 1.0))
    out.push_back(ErrorCode::DiscountOutOfRange);
  if (m.sigma0_sq < 0.0) out.push_back(ErrorCode::NegativeInitialVariance);
  if (m.sigma_w < 0.0) out.push_back(ErrorCode::NegativeNoiseStd);
  return out;
}

ValidatedModel validate_params(const ModelParams& params) {
  const auto violations = param_violations(params);
  if (!violations.empty()) {
    std::string msg = "invalid model parameters:";
    for (auto v : violations) {
      msg += ' ';
      msg += to_string(v);
    }
    throw Error(violations.front(), msg);
  }
  return ValidatedModel(params);
}

GameCoefficients coefficients_of(const ModelParams& m) {
  return {m.a, m.b, m.c_z, m.c_u, m.gamma};
}

namespace {

void fill_dare_coefficients(RiccatiGains& g) {
  const auto& c = g.coeffs;
  const double gb2 = c.gamma * c.b * c.b;
  g.alpha = c.c_u * (1.0 - c.gamma * c.a * c.a) / gb2 - c.c_z;
  g.beta = c.c_z * c.c_u / gb2;
}

void fill_feedback_gains(RiccatiGains& g) {
  const auto& c = g.coeffs;
  g.g_p = -c.gamma * c.b / (c.c_u + c.gamma * c.b * c.b * g.p);
  g.h_p = c.a * (1.0 + c.b * g.p * g.g_p);
  g.T_p = std::abs(g.h_p) +
          std::abs(c.c_z * c.b * g.g_p / (1.0 - c.gamma * g.h_p));
}

}  // namespace

RiccatiGains solve_riccati(const ValidatedModel& model) {
  RiccatiGains g;
  g.coeffs = coefficients_of(model.params());
  fill_dare_coefficients(g);
  // p = (-alpha + sqrt(alpha^2 + 4 beta)) / 2. For alpha > 0 the numerator
  // cancels, so use the conjugate form 2 beta / (alpha + sqrt(...)).
  const double disc = std::sqrt(g.alpha * g.alpha + 4.0 * g.beta);
  if (g.coeffs.a == 0.0)
    g.p = g.coeffs.c_z;
  else
    g.p = g.alpha > 0.0 ? 2.0 * g.beta / (g.alpha + disc)
                        : (-g.alpha + disc) / 2.0;
  fill_feedback_gains(g);
  return g;
}

RiccatiGains gains_from_p(const GameCoefficients& coeffs, double p) {
  RiccatiGains g;
  g.coeffs = coeffs;
  fill_dare_coefficients(g);
  g.p = p;
  fill_feedback_gains(g);
  return g;
}

double dare_residual(const RiccatiGains& g) {
  return g.p * (g.p + g.alpha) - g.beta;
}

ContractionDiagnostic check_contraction(const RiccatiGains& gains) {
  return {gains.T_p < 1.0, gains.T_p};
}

void require_contraction(const RiccatiGains& gains) {
  if (!(gains.T_p < 1.0)) {
    throw Error(ErrorCode::AssumptionViolated,
                "contraction modulus T_p = " + std::to_string(gains.T_p) +
                    " is not below 1");
  }
}

double sup_norm_lipschitz(const RiccatiGains& gains) {
  const auto& c = gains.coeffs;
  const double h = std::abs(gains.h_p);
  return h + std::abs(c.c_z * c.b * gains.g_p) / (1.0 - c.gamma * h);
}

double stopping_threshold(const RiccatiGains& gains, double eps_s) {
  require_contraction(gains);
  if (!(eps_s > 0.0))
    throw Error(ErrorCode::InvalidArgument, "eps_s must be positive");
  return eps_s * (1.0 - gains.T_p) / gains.T_p;
}

std::int64_t iteration_bound(const RiccatiGains& gains, double eps_s,
                             double initial_gap) {
  require_contraction(gains);
  if (!(eps_s > 0.0) || !(initial_gap > 0.0))
    throw Error(ErrorCode::InvalidArgument,
                "eps_s and initial_gap must be positive");
  const double k =
      std::ceil((std::log(eps_s) - std::log(initial_gap)) / std::log(gains.T_p));
  return k > 0.0 ? static_cast<std::int64_t>(k) : 0;
}

}  // namespace lqmfg
