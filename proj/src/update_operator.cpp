#include "lqmfg/update_operator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lqmfg/control.hpp"

namespace lqmfg {

double latent_rate(const RiccatiGains& gains, double r) {
  const auto& c = gains.coeffs;
  return gains.h_p - c.c_z * c.b * gains.g_p * r / tail_denominator(gains, r);
}

LatentSeq apply_T_latent(const LatentSeq& seq, const RiccatiGains& gains,
                         double nu0) {
  const std::size_t tau = seq.latency();
  const double rate = latent_rate(gains, seq.r());
  const double bg = gains.coeffs.b * gains.g_p;
  const auto lambda = costate_path(seq, gains, tau);
  auto head = seq.head();

  std::vector<double> out(tau + 2);
  out[0] = nu0;
  for (std::size_t t = 0; t < tau; ++t)
    out[t + 1] = gains.h_p * head[t] + bg * lambda[t + 1];
  out[tau + 1] = rate * head[tau];
  return LatentSeq(std::move(out), seq.r());
}

std::vector<double> apply_T_direct(const LatentSeq& seq,
                                   const RiccatiGains& gains, double nu0,
                                   std::size_t t_max, std::size_t trunc_M) {
  const auto& c = gains.coeffs;
  const double gh = c.gamma * gains.h_p;
  std::vector<double> out(t_max + 1);
  out[0] = nu0;
  for (std::size_t t = 0; t < t_max; ++t) {
    double sum = 0.0;
    double w = 1.0;
    for (std::size_t s = 0; s < trunc_M; ++s) {
      sum += w * seq(t + 1 + s);
      w *= gh;
    }
    out[t + 1] = gains.h_p * seq(t) - c.c_z * c.b * gains.g_p * sum;
  }
  return out;
}

double direct_truncation_bound(const RiccatiGains& gains, double sup_norm,
                               std::size_t trunc_M) {
  const auto& c = gains.coeffs;
  const double gh = c.gamma * std::abs(gains.h_p);
  return c.c_z * std::abs(c.b * gains.g_p) *
         std::pow(gh, static_cast<double>(trunc_M)) * sup_norm / (1.0 - gh);
}

std::size_t default_truncation(const RiccatiGains& gains, double sup_norm) {
  std::size_t M = 1;
  while (direct_truncation_bound(gains, sup_norm, M) >= 1e-14 && M < 100000)
    ++M;
  return M;
}

double contraction_ratio(const LatentSeq& s1, const LatentSeq& s2,
                         const RiccatiGains& gains, double nu0) {
  const double before = sup_distance(s1, s2);
  if (before == 0.0) return 0.0;
  const double after = sup_distance(apply_T_latent(s1, gains, nu0),
                                    apply_T_latent(s2, gains, nu0));
  return after / before;
}

double contraction_estimate(const RiccatiGains& gains, double nu0,
                            std::size_t n_pairs, std::uint64_t seed) {
  require_contraction(gains);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-10.0, 10.0);
  std::uniform_real_distribution<double> ratio(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> length(1, 16);

  auto draw_head = [&] {
    std::vector<double> h(length(rng));
    for (auto& v : h) v = value(rng);
    return h;
  };

  double worst = 0.0;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const double r = ratio(rng);
    LatentSeq s1(draw_head(), r);
    LatentSeq s2(draw_head(), r);
    worst = std::max(worst, contraction_ratio(s1, s2, gains, nu0));
  }
  return worst;
}

}  // namespace lqmfg
