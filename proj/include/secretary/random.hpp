#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace secretary {

/// Philox4x32-10 block function (Salmon et al., Random123).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Source of uniform choices used by the engine for tie-breaking, forced
/// matchings and randomized strategies.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  /// Uniform integer in [0, bound). bound must be positive.
  virtual std::uint64_t uniform_below(std::uint64_t bound) = 0;
};

/// Counter-based stream: substream `stream` of `seed`. Two streams with
/// distinct (seed, stream) pairs never share a counter block.
class PhiloxStream final : public RandomSource {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform double in [0, 1) with 53 random bits.
  double next_double();
  std::uint64_t uniform_below(std::uint64_t bound) override;

 private:
  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  PhiloxCounter buffer_{};
  int used_ = 4;
};

/// Uniformly random permutation of {1..n} (Fisher-Yates).
std::vector<int> random_permutation(int n, RandomSource& rng);

}  // namespace secretary
