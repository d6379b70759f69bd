#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "lqmfg/model.hpp"
#include "lqmfg/sequence.hpp"

namespace lqmfg {

struct IterationConfig {
  double eps_s = 0.005;
  double r = 0.6;
  /// Starting head; defaults to {nu0}. Element 0 must equal nu0.
  std::optional<std::vector<double>> init_head;
  std::size_t max_iter = 100000;
  /// Keep every iterate. When false only the last two are retained.
  bool keep_iterates = true;
};

enum class Termination { StoppingRule, MaxIter };

std::string_view to_string(Termination t);

struct IterationTrace {
  /// z^(0) .. z^(k*), or the last two iterates in low-memory mode.
  std::vector<LatentSeq> iterates;
  /// deltas[j] = sup_distance(z^(j+1), z^(j)).
  std::vector<double> deltas;
  std::size_t k_star = 0;
  Termination terminated_by = Termination::MaxIter;
  double eps_s = 0.0;
  double threshold = 0.0;

  const LatentSeq& final_iterate() const { return iterates.back(); }
  /// Iteration index of iterates[i]; differs from i in low-memory mode.
  std::size_t iteration_of(std::size_t i) const {
    return k_star + 1 - iterates.size() + i;
  }
};

/// Picard iteration of the latent update operator from a 0-latent start.
/// Always performs one update, then stops once the consecutive sup-distance
/// is at most eps_s (1 - T_p) / T_p, or after max_iter updates. Throws
/// AssumptionViolated when T_p >= 1.
IterationTrace run_policy_iteration(const ValidatedModel& model,
                                    const RiccatiGains& gains,
                                    const IterationConfig& cfg);

struct CertificationReport {
  /// ||z^(j+1) - ref|| / ||z^(j) - ref|| for every j with a nonzero
  /// denominator.
  std::vector<double> contraction_ratios;
  double max_ratio = 0.0;
  bool ratios_ok = true;
  /// exp of the least-squares slope of log(delta_j) against j.
  double fitted_rate = 0.0;
  bool rate_ok = true;
  double final_error = 0.0;
  bool final_ok = true;

  bool all_ok() const { return ratios_ok && rate_ok && final_ok; }
};

/// Checks a trace against a high-precision reference iterate standing in
/// for the fixed point: per-step ratios <= T_p + 1e-9, fitted delta rate
/// <= T_p + 1e-2, and final error < eps_s.
CertificationReport certify(const IterationTrace& trace,
                            const RiccatiGains& gains,
                            const LatentSeq& reference);

}  // namespace lqmfg
