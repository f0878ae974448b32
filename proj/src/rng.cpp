#include "typeident/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace typeident {

RatVector random_simplex_point(Rng& rng, int size, long grid) {
  if (size < 1) throw std::invalid_argument("simplex point needs size >= 1");
  std::vector<long> numerators(static_cast<size_t>(size));
  long total = 0;
  for (auto& n : numerators) {
    n = rng.range(1, grid);
    total += n;
  }
  RatVector out(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) out[static_cast<size_t>(i)] = make_rational(numerators[static_cast<size_t>(i)], total);
  return out;
}

RatVector random_prime_simplex_point(Rng& rng, int size, long prime) {
  if (size < 1 || prime <= size) throw std::invalid_argument("prime too small for composition");
  // Distinct cut points 0 < c_1 < ... < c_{size-1} < prime give positive parts.
  std::vector<long> cuts;
  while (static_cast<int>(cuts.size()) < size - 1) {
    const long c = rng.range(1, prime - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  cuts.push_back(0);
  cuts.push_back(prime);
  std::sort(cuts.begin(), cuts.end());
  RatVector out;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    out.push_back(make_rational(cuts[i + 1] - cuts[i], prime));
  }
  return out;
}

std::vector<long> primes_near_1e4(int count) {
  std::vector<long> primes;
  long candidate = 10007;
  while (static_cast<int>(primes.size()) < count) {
    bool is_prime = candidate % 2 == 1;
    for (long d = 3; is_prime && d * d <= candidate; d += 2) {
      if (candidate % d == 0) is_prime = false;
    }
    if (is_prime) primes.push_back(candidate);
    ++candidate;
  }
  return primes;
}

}  // namespace typeident
