#include "lqmfg/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lqmfg/error.hpp"

namespace lqmfg {

LatentSeq::LatentSeq(std::vector<double> head, double r)
    : head_(std::move(head)), r_(r) {
  if (head_.empty())
    throw Error(ErrorCode::InvalidSequence, "latent sequence head is empty");
  if (!(std::abs(r_) <= 1.0))
    throw Error(ErrorCode::InvalidSequence,
                "tail ratio must satisfy |r| <= 1, got " + std::to_string(r_));
  for (double v : head_)
    if (!std::isfinite(v))
      throw Error(ErrorCode::InvalidSequence, "non-finite head value");
}

double LatentSeq::operator()(std::size_t t) const {
  const std::size_t tau = latency();
  if (t <= tau) return head_[t];
  return head_[tau] * std::pow(r_, static_cast<double>(t - tau));
}

double LatentSeq::sup_norm() const {
  double m = 0.0;
  for (double v : head_) m = std::max(m, std::abs(v));
  return m;
}

double sup_distance(const LatentSeq& s1, const LatentSeq& s2) {
  if (s1.r() != s2.r())
    throw Error(ErrorCode::RatioMismatch,
                "sup_distance requires equal tail ratios");
  const std::size_t last = std::max(s1.latency(), s2.latency());
  double d = 0.0;
  for (std::size_t t = 0; t <= last; ++t)
    d = std::max(d, std::abs(s1(t) - s2(t)));
  return d;
}

}  // namespace lqmfg
