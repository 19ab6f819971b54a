#ifndef HATS_RNG_HPP
#define HATS_RNG_HPP

#include <cstdint>

#include "hats/common.hpp"

namespace hats {

// Counter-based generator (splitmix64 finalizer). Every random quantity in
// the engine is a pure function of (seed, counter, slot), so sampling splits
// across threads without shared state and replays exactly from the seed.
inline u64 mix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline u64 rng_word(u64 seed, u64 counter, u64 slot) {
    return mix64(seed ^ mix64(counter * 0x9e3779b97f4a7c15ULL + slot + 0x2545f4914f6cdd1dULL));
}

// Unbiased-enough bounded draw via the multiply-shift reduction.
inline int rng_below(u64 word, int bound) {
    return int((u128(word) * u128(bound)) >> 64);
}

} // namespace hats

#endif
