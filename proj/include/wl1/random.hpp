#pragma once

#include <cstdint>
#include <initializer_list>

namespace wl1 {

// 64-bit avalanche mix (SplitMix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Order-sensitive hash of a sequence of words; used to derive child seeds
// from (parent seed, task indices).
std::uint64_t hash_seed(std::initializer_list<std::uint64_t> words);

// Counter-based generator: the i-th draw is a pure function of (seed, i), so
// streams are identical across runs, platforms and thread schedules.
// Single-owner; derive independent streams with child().
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return counter_; }

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1].
  double uniform_open_low();
  // Unbiased integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Standard normal via Box-Muller; pairs are consumed in order.
  double normal();

  Rng child(std::uint64_t index) const {
    return Rng(hash_seed({seed_, index}));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace wl1
