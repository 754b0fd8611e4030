#pragma once

#include <cstdint>

namespace rootsim {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives a stream key from a base seed and one or more indices.
/// mix(a, b, c) == mix(mix(a, b), c).
constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

template <class... Rest>
constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t index,
                            Rest... rest) noexcept {
  return mix(mix(seed, index), static_cast<std::uint64_t>(rest)...);
}

/// Counter-based generator: the i-th output is splitmix64(key + i * golden).
/// Each draw depends only on (key, position), so streams are identical
/// regardless of platform or which thread consumes them.
class RngState {
 public:
  constexpr explicit RngState(std::uint64_t key) noexcept : state_(key) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe as a log argument.
  constexpr double uniform_open_left() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  constexpr bool coin() noexcept { return (next_u64() >> 63) != 0; }

  constexpr std::uint64_t position() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace rootsim
