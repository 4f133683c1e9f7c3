#pragma once

#include <cstdint>

namespace fta {

/// SplitMix64 step: z += 0x9e3779b97f4a7c15, then two xor-shift-multiply
/// rounds. Used to expand seeds.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// xorshift64* (Vigna): x ^= x >> 12; x ^= x << 25; x ^= x >> 27;
/// output x * 0x2545f4914f6cdd1d. The state is seeded through SplitMix64 so
/// that seed 0 is valid. Outputs are identical on every platform.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform in [0, bound) by rejection sampling; bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace fta
