#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lqmfg/model.hpp"
#include "lqmfg/sequence.hpp"

namespace lqmfg {

/// r_hat = h_p - c_z b g_p r / (1 - gamma h_p r): the map from x_tau to the
/// first tail element of the updated sequence.
double latent_rate(const RiccatiGains& gains, double r);

/// Mean-field update T = Lambda o Phi on a latent sequence. The result has
/// one more head element and the same r: x'_0 = nu0,
/// x'_{t+1} = h_p x_t + b g_p lambda_{t+1}(x) for t < tau, and
/// x'_{tau+1} = r_hat x_tau.
LatentSeq apply_T_latent(const LatentSeq& seq, const RiccatiGains& gains,
                         double nu0);

/// Direct evaluation of the update with the infinite co-state sum truncated
/// after trunc_M terms. Returns x'_0 .. x'_{t_max}. Oracle for tests.
std::vector<double> apply_T_direct(const LatentSeq& seq,
                                   const RiccatiGains& gains, double nu0,
                                   std::size_t t_max, std::size_t trunc_M);

/// Bound on |apply_T_direct - apply_T_latent| at every index:
/// c_z |b g_p| (gamma |h_p|)^M max|head| / (1 - gamma |h_p|).
double direct_truncation_bound(const RiccatiGains& gains, double sup_norm,
                               std::size_t trunc_M);

/// Smallest M for which direct_truncation_bound is below 1e-14.
std::size_t default_truncation(const RiccatiGains& gains, double sup_norm);

/// ||T s1 - T s2|| / ||s1 - s2||, or 0 when s1 and s2 coincide.
double contraction_ratio(const LatentSeq& s1, const LatentSeq& s2,
                         const RiccatiGains& gains, double nu0);

/// Max contraction ratio over n_pairs random same-r pairs: heads uniform in
/// [-10, 10] with random latencies, r uniform in [-1, 1]. Should not exceed
/// T_p. Deterministic for a given seed.
double contraction_estimate(const RiccatiGains& gains, double nu0,
                            std::size_t n_pairs, std::uint64_t seed);

}  // namespace lqmfg
