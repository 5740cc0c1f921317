#pragma once

// Deterministic random helper for the fuzz tooling and tests. std::mt19937_64
// is pinned by the standard; the mapping to doubles is done by hand because
// std::uniform_real_distribution is implementation-defined and the fuzz
// output must be byte-identical for a given seed.

#include <cstdint>
#include <random>

namespace pamm {

struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double unit() {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  std::uint64_t below(std::uint64_t n) { return engine() % n; }
};

}  // namespace pamm
