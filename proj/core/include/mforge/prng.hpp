#pragma once

#include <cstdint>

namespace mforge {

// splitmix64: small, seedable, identical on every platform. All sampling in
// the library draws from this so reports are reproducible from the seed alone.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [lo, hi], inclusive; ranges here are tiny so modulo bias is nil
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
};

// Derive an independent stream per trial/root instead of advancing one shared
// generator, so trial k's draws never depend on how many trials ran before it.
inline uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ull * (salt + 1)));
  return g.next();
}

}  // namespace mforge
