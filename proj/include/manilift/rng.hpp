#pragma once

#include <cstdint>

namespace manilift {

/// Counter-based 64-bit generator (the splitmix64 finalizer applied to
/// seed + n * golden-ratio increment). Integer state only, so streams are
/// bit-reproducible across platforms and independent of call interleaving
/// when derived per sample.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() { return finalize(seed_ + (++counter_) * kIncrement); }

  /// Uniform double in [0, 1), 53 random mantissa bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [0, bound) by rejection, bias-free.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t draw;
    do {
      draw = next_u64();
    } while (draw >= limit);
    return draw % bound;
  }

  /// Independent stream keyed by (seed, stream); used so that parallel
  /// per-sample generation stays deterministic.
  CounterRng derived(std::uint64_t stream) const {
    return CounterRng(finalize(seed_ ^ finalize(stream + kIncrement)));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  static constexpr std::uint64_t kIncrement = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace manilift
