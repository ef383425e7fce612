#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace augbin {

/// SplitMix64 generator (Steele, Lea & Flood; constants as in Vigna's
/// reference splitmix64.c). Every random quantity in the library is drawn
/// from this stream so that runs are reproducible across implementations.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t operator()() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

  /// Uniform double in [0, 1): the top 53 bits scaled by 2^-53.
  constexpr double next_unit() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi): lo + (hi - lo) * next_unit().
  constexpr double next_uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * next_unit();
  }

  /// Uniform integer in [0, count): floor(next_unit() * count).
  constexpr std::uint64_t next_index(std::uint64_t count) noexcept {
    auto i = static_cast<std::uint64_t>(next_unit() * static_cast<double>(count));
    return i < count ? i : count - 1;
  }

 private:
  std::uint64_t state_;
};

/// Standard normal deviates by Box-Muller. Each pair of uniforms yields two
/// deviates; the cosine branch is returned first, the sine branch next.
class BoxMuller {
 public:
  double operator()(SplitMix64& rng) {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - rng.next_unit();
    const double u2 = rng.next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace augbin
