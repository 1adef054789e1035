#pragma once

#include <cstdint>

namespace qgamble {

// Counter-based pseudo-random stream (splitmix64). Draw k of a stream with
// seed s is a pure function of (s, k): sequential consumption and random
// access by index yield the same sequence, which is what makes parallel
// Monte Carlo kernels reproduce the serial draw-per-round layout exactly.
//
// Concurrent consumers must not share a stream; consumer i derives its own
// stream as substream(i) (seeded with master_seed XOR i).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), cursor_(0) {}

  std::uint64_t next_u64() { return u64_at(seed_, cursor_++); }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return to_unit(next_u64()); }

  // Number of draws consumed so far.
  std::uint64_t cursor() const { return cursor_; }
  std::uint64_t seed() const { return seed_; }

  RandomStream substream(std::uint64_t i) const {
    return RandomStream(seed_ ^ i);
  }

  // Draw k of the stream with the given seed, without constructing a stream.
  static std::uint64_t u64_at(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  static double unit_at(std::uint64_t seed, std::uint64_t k) {
    return to_unit(u64_at(seed, k));
  }

 private:
  static double to_unit(std::uint64_t z) {
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed_;
  std::uint64_t cursor_;
};

}  // namespace qgamble
