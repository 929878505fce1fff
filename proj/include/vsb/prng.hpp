// Deterministic 64-bit PRNG (SplitMix64). Hand implemented so seeded runs
// produce identical bytes on every platform and standard library: the state
// advances by the golden-ratio increment and the output mix is the standard
// SplitMix64 finalizer (Vigna's published constants).
#pragma once

#include <cstdint>

namespace vsb {

struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, bound); bound 0 returns 0. Uses plain modulo:
  // the tiny bias is irrelevant for test-case generation and keeping the
  // mapping trivial makes golden outputs easy to reproduce by hand.
  uint64_t next_below(uint64_t bound) { return bound ? next() % bound : 0; }
};

}  // namespace vsb
