#pragma once

#include <cstdint>
#include <vector>

#include "typeident/rational.hpp"

namespace typeident {

// Deterministic 64-bit generator (splitmix64). Distributions are built by
// rejection so that identical seeds give identical streams everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~0ull) / n);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

  // Uniform in [lo, hi] inclusive.
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Derive an independent stream for a sub-task.
  Rng fork(std::uint64_t salt) {
    return Rng(next() ^ (salt * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull));
  }

 private:
  std::uint64_t state_;
};

// Strictly positive rational vector summing to exactly 1, numerators drawn
// from {1, ..., grid} before normalization.
RatVector random_simplex_point(Rng& rng, int size, long grid);

// Simplex point whose entries share one prime denominator: a random
// composition of `prime` into `size` positive parts.
RatVector random_prime_simplex_point(Rng& rng, int size, long prime);

// The first `count` primes >= 10007.
std::vector<long> primes_near_1e4(int count);

}  // namespace typeident
