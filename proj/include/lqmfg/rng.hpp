#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace lqmfg {

enum class StreamPurpose : std::uint64_t { InitialState = 1, Noise = 2 };

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: the i-th draw is a pure function of
/// (seed, replication, agent, purpose, i), so streams do not depend on the
/// order in which agents or replications are processed.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t replication, std::uint64_t agent,
            StreamPurpose purpose)
      : key_(mix64(mix64(mix64(mix64(seed) ^ replication) ^ agent) ^
                   static_cast<std::uint64_t>(purpose))) {}

  std::uint64_t next_u64() {
    counter_ += 1;
    return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform in (0, 1].
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the second variate is cached.
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(next_unit()));
    const double angle = 2.0 * std::numbers::pi * next_unit();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lqmfg
