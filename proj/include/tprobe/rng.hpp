#pragma once

#include <cstdint>
#include <limits>

namespace tprobe {

/// Counter-based random stream (splitmix64 increments over a keyed state).
///
/// Streams are cheap to derive: `split(id)` returns an independent child
/// stream whose sequence depends only on the parent key and `id`, never on
/// how many values the parent has already produced. Replicates and boxes
/// therefore get reproducible randomness regardless of execution order.
///
/// Satisfies UniformRandomBitGenerator, so it plugs into <random>
/// distributions when needed.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Rng(std::uint64_t seed = 0) noexcept : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)), state_(key_) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += kGolden;
    return mix(state_);
  }

  /// Uniform double on [0, 1) with 53 bits of resolution.
  constexpr double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  [[nodiscard]] constexpr Rng split(std::uint64_t id) const noexcept {
    Rng child;
    child.key_ = mix(key_ ^ mix(id + 0x3c6ef372fe94f82bULL));
    child.state_ = child.key_;
    return child;
  }

  constexpr std::uint64_t key() const noexcept { return key_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t state_;
};

}  // namespace tprobe
