#pragma once

#include <cstdint>
#include <vector>

namespace lmlab {

// splitmix64: tiny counter-based generator with full 64-bit state avalanche.
// Used everywhere randomness is needed so that a (seed, index) pair produces
// the same stream on every platform; std::uniform_int_distribution is
// implementation-defined and must not appear in any reproducible path.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct seeded_rng {
  std::uint64_t state;

  explicit seeded_rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() { return splitmix64(state); }

  // Unbiased draw from [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Bernoulli(p) with a fixed 2^-64 grid.
  bool next_bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    const long double scaled = static_cast<long double>(p) * 18446744073709551616.0L;
    const std::uint64_t threshold = static_cast<std::uint64_t>(scaled);
    return next_u64() < threshold;
  }
};

// Derived seed for a parallel trial: mix the master seed with the trial index
// so workers never share generator state.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial) {
  std::uint64_t s = master ^ (0x6a09e667f3bcc909ULL + trial * 0x9e3779b97f4a7c15ULL);
  splitmix64(s);
  std::uint64_t t = s;
  return splitmix64(t);
}

// In-place Fisher-Yates over an index vector.
template <class T>
void shuffle_fisher_yates(std::vector<T>& items, seeded_rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace lmlab
