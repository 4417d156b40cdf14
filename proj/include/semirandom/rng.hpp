#pragma once

#include <cstdint>
#include <random>

namespace semirandom {

// splitmix64 step; advances state and returns the next output.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed for stream `index` of `base_seed`. Equals the (index+1)-th output of
// the splitmix64 sequence started at base_seed, so distinct trials get
// decorrelated generators while staying reproducible from (seed, trial).
inline std::uint64_t derive_stream(std::uint64_t base_seed, std::uint64_t index) {
  std::uint64_t state = base_seed + index * 0x9E3779B97F4A7C15ULL;
  return splitmix64(state);
}

// Seedable generator with platform-independent output. The core is
// std::mt19937_64 (its sequence is pinned by the standard); bounded draws
// use bitmask rejection instead of std::uniform_int_distribution, whose
// output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Unbiased draw from [0, bound). bound == 0 or 1 returns 0 without
  // consuming generator state.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(bound - 1);
    std::uint64_t x;
    do {
      x = gen_() & mask;
    } while (x >= bound);
    return x;
  }

  std::uint32_t vertex(std::uint32_t n) { return static_cast<std::uint32_t>(below(n)); }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace semirandom
