#pragma once

#include <cstdint>

namespace induced {

__extension__ using uint128_t = unsigned __int128;

/// Counter-based generator: every output is a pure function of
/// (seed, stream, counter), so draws can be assigned to samples rather than
/// to threads and results do not depend on scheduling.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  constexpr std::uint64_t next_u64() noexcept { return mix(key_ + mix(counter_++)); }

  /// Uniform on the open interval (0, 1).
  constexpr double next_open01() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound) by multiply-shift with rejection.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const uint128_t m = static_cast<uint128_t>(next_u64()) * bound;
      if (static_cast<std::uint64_t>(m) >= threshold) return static_cast<std::uint64_t>(m >> 64);
    }
  }

  constexpr std::uint64_t counter() const noexcept { return counter_; }

  /// splitmix64 finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace induced
