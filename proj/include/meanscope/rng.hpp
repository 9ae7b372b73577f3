#pragma once

#include <cstdint>
#include <string_view>

namespace meanscope {

/// SplitMix64 generator. Small, seedable, and bit-identical on every
/// platform, unlike the std:: distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi);
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::uint64_t state_;
};

std::uint64_t fnv1a(std::string_view text);

/// Seed of the independent stream for (seed, label, index). Sample i of an
/// entry draws only from its own stream, so evaluation order is irrelevant.
std::uint64_t stream_seed(std::uint64_t seed, std::string_view label, std::uint64_t index);

}  // namespace meanscope
