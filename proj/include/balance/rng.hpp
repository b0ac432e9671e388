#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace balance {

/// Master seed of a run. Replicate k draws from the substream keyed by
/// (master_seed, k), so results do not depend on scheduling.
struct SeedSpec {
  std::uint64_t master_seed = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t substream_key(std::uint64_t master, std::uint64_t k) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(~k));
}

/// Child seed for a nested experiment (e.g. the test run on generated graph k).
constexpr SeedSpec derive(const SeedSpec& parent, std::uint64_t tag) noexcept {
  return SeedSpec{substream_key(parent.master_seed ^ 0xA5A5A5A5A5A5A5A5ULL, tag)};
}

/// mt19937_64 with hand-rolled distributions. The std:: distributions are
/// implementation-defined, which would break cross-platform reproducibility.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(const SeedSpec& seed, std::uint64_t k) {
    return Rng(substream_key(seed.master_seed, k));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive. Lemire's method.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 product = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace balance
