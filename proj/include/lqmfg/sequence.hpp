#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lqmfg {

/// A tau-latent LTI sequence: arbitrary values x_0..x_tau followed by the
/// geometric tail x_{t+1} = r x_t for t >= tau. The latency tau is
/// head().size() - 1. Requires a non-empty head and |r| <= 1, so the
/// sequence is bounded by max|head|. r = +-1 gives a non-decaying tail.
class LatentSeq {
 public:
  LatentSeq(std::vector<double> head, double r);

  /// Constant sequence (head = {value}, r = 1).
  static LatentSeq constant(double value) { return LatentSeq({value}, 1.0); }

  std::span<const double> head() const noexcept { return head_; }
  double r() const noexcept { return r_; }
  std::size_t latency() const noexcept { return head_.size() - 1; }

  /// x_t for any t >= 0.
  double operator()(std::size_t t) const;

  /// max |head|, which is the sup-norm of the whole sequence.
  double sup_norm() const;

  friend bool operator==(const LatentSeq&, const LatentSeq&) = default;

 private:
  std::vector<double> head_;
  double r_;
};

inline double eval(const LatentSeq& seq, std::size_t t) { return seq(t); }

/// sup_t |s1_t - s2_t|, exact. Throws RatioMismatch unless s1.r() == s2.r();
/// with a shared ratio the gap past both latencies only shrinks, so the
/// maximum over t <= max(tau1, tau2) is the supremum.
double sup_distance(const LatentSeq& s1, const LatentSeq& s2);

}  // namespace lqmfg
