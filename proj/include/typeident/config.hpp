#pragma once

#include <cstdint>

namespace typeident::config {

// Full matching enumeration is refused above this many types; callers are
// pointed at the permanent-based tests instead.
inline constexpr int kEnumerationCap = 8;

// Ryser's formula is exact but 2^r; permanents are refused above this.
inline constexpr int kPermanentCap = 20;

// State-matching enumeration is refused when |A|^r exceeds this, and the
// type-state verdicts fall back to randomized polynomial identity testing.
inline constexpr std::uint64_t kStateEnumerationCap = 10'000'000;

// Randomized polynomial identity testing: number of rational evaluation
// points; each sample's weight vector has a distinct prime denominator
// near 10^4.
inline constexpr int kPitSamples = 30;

// Typicality (span membership) of a split is sampled at random weight
// vectors; on disagreement the sample count is tripled, with a hard fail
// past the maximum.
inline constexpr int kTypicalitySamples = 10;
inline constexpr int kTypicalityEscalation = 3;
inline constexpr int kTypicalityMaxSamples = 90;

// Denominator of the rational sampling grid for random instances.
inline constexpr long kGridDenominator = 1'000'000;

inline constexpr std::uint64_t kDefaultSeed = 42;

}  // namespace typeident::config
