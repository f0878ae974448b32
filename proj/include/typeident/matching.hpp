#pragma once

#include <optional>
#include <vector>

#include "typeident/model.hpp"
#include "typeident/verdict.hpp"

namespace typeident {

// An injective type-to-alternative assignment consistent with the pattern.
struct Matching {
  std::vector<int> assignment;  // [type] -> alternative index
  int parity = 1;               // +1 even, -1 odd, relative to canonical order
};

struct SquarePatternStats {
  std::vector<int> rows;       // the r-subset of alternatives
  long long permanent = 0;     // number of full matchings into rows
  long long signed_count = 0;  // #even - #odd
};

struct MaxMatchingResult {
  int size = 0;
  std::optional<Matching> matching;  // present iff size == r
};

// Sign of the permutation sending i to perm[i] over the values appearing in
// perm (which need not be 0..r-1 contiguous).
int permutation_parity(const std::vector<int>& perm);

// Maximum-cardinality matching; augmenting paths explored in canonical
// index order, so the result is deterministic.
MaxMatchingResult max_matching(const PossibilityPattern& pattern);

// A minimal Hall-deficient type subset (|N(S)| < |S|), scanning subsets in
// increasing size and lexicographic order. Empty when none exists.
std::vector<int> hall_deficient_set(const PossibilityPattern& pattern);

// All full matchings T -> rows in lexicographic order of assignment.
// Throws CapExceededError above the enumeration cap.
std::vector<Matching> enumerate_matchings(const PossibilityPattern& pattern,
                                          const std::vector<int>& rows);

// First lexicographic full matching T -> rows, or nullopt.
std::optional<Matching> first_matching(const PossibilityPattern& pattern,
                                       const std::vector<int>& rows);

// First full matching with the requested parity (+1 or -1), DFS order.
std::optional<Matching> first_matching_with_parity(const PossibilityPattern& pattern,
                                                   const std::vector<int>& rows, int parity);

// Permanent via Ryser's inclusion-exclusion; signed count via the exact
// integer determinant of the 0/1 minor. Throws CapExceededError for r > 20.
SquarePatternStats square_stats(const PossibilityPattern& pattern,
                                const std::vector<int>& rows);

// Trichotomy for the general framework. With verbose, every qualifying row
// subset is listed rather than the lexicographically first.
Verdict verdict_general(const PossibilityPattern& pattern, bool verbose = false);

bool verify_matching(const PossibilityPattern& pattern, const Matching& m);
bool verify_deficient_set(const PossibilityPattern& pattern, const std::vector<int>& types);

// Neighborhood N(S): alternatives where some type in S is possible.
std::vector<int> neighborhood(const PossibilityPattern& pattern, const std::vector<int>& types);

}  // namespace typeident
