#include "lqmfg/reference.hpp"

#include <cmath>

namespace lqmfg::reference {

double riccati_step(const GameCoefficients& c, double p_next) {
  const double denom = c.c_u + c.gamma * c.b * c.b * p_next;
  return c.gamma * c.a * c.a * p_next + c.c_z -
         c.gamma * c.gamma * c.a * c.a * c.b * c.b * p_next * p_next / denom;
}

double riccati_by_recursion(const GameCoefficients& c, double tol,
                            std::size_t max_steps) {
  double p = 0.0;
  for (std::size_t i = 0; i < max_steps; ++i) {
    const double prev = p;
    p = riccati_step(c, p);
    if (std::abs(p - prev) < tol) break;
  }
  return p;
}

SweepResult backward_sweep(const ValidatedModel& model, const LatentSeq& target,
                           std::size_t horizon, double terminal_p,
                           double terminal_lambda) {
  if (horizon < 1)
    throw Error(ErrorCode::InvalidArgument, "horizon must be at least 1");
  const auto c = coefficients_of(model.params());
  SweepResult out;
  out.p.resize(horizon + 1);
  out.lambda.resize(horizon + 1);
  out.feedback.resize(horizon);
  out.feedforward.resize(horizon);
  out.p[horizon] = terminal_p;
  out.lambda[horizon] = terminal_lambda;

  for (std::size_t t = horizon; t-- > 0;) {
    const double p1 = out.p[t + 1];
    const double l1 = out.lambda[t + 1];
    const double denom = c.c_u + c.gamma * c.b * c.b * p1;
    out.feedback[t] = -c.gamma * c.b * p1 * c.a / denom;
    out.feedforward[t] = -c.gamma * c.b * l1 / denom;
    out.lambda[t] =
        c.gamma * c.a * (1.0 - c.gamma * p1 * c.b * c.b / denom) * l1 -
        c.c_z * target(t);
    out.p[t] = riccati_step(c, p1);
  }
  return out;
}

double costate_truncated(const LatentSeq& seq, const RiccatiGains& gains,
                         std::size_t t, std::size_t M) {
  if (M < 1) throw Error(ErrorCode::InvalidArgument, "M must be at least 1");
  const double gh = gains.coeffs.gamma * gains.h_p;
  double sum = 0.0;
  double w = 1.0;
  for (std::size_t s = 0; s < M; ++s) {
    sum += w * seq(t + s);
    w *= gh;
  }
  return -gains.coeffs.c_z * sum;
}

double costate_truncation_bound(const LatentSeq& seq, const RiccatiGains& gains,
                                std::size_t M) {
  const double gh = gains.coeffs.gamma * std::abs(gains.h_p);
  return gains.coeffs.c_z * std::pow(gh, static_cast<double>(M)) *
         seq.sup_norm() / (1.0 - gh);
}

}  // namespace lqmfg::reference
