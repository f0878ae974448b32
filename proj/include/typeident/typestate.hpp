#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "typeident/config.hpp"
#include "typeident/matching.hpp"
#include "typeident/model.hpp"
#include "typeident/verdict.hpp"

namespace typeident {

// A matching together with, for each type, a state in which the type
// actually chooses its matched alternative.
struct StateMatching {
  Matching matching;
  std::vector<int> state_choice;  // [type] -> state index
  std::vector<int> usage;         // [state] -> number of types using it
};

// The determinant of the minor on `rows` as a polynomial in the state
// weights, stored as usage-vector -> net (even minus odd) integer
// coefficient. Classes that cancel to zero are kept for diagnostics.
struct DetPolynomial {
  std::vector<int> rows;
  std::map<std::vector<int>, long long> coeffs;
};

// States in which distinct types choose distinct alternatives.
std::vector<int> separating_states(const TypeStateModel& ts);

// The full set of state-matchings with image `rows`, in lexicographic
// order of the ((alternative, state) per type) choice sequence.
// Throws CapExceededError when |A|^r exceeds the enumeration cap.
std::vector<StateMatching> enumerate_state_matchings(const TypeStateModel& ts,
                                                     const std::vector<int>& rows);

DetPolynomial det_polynomial(const TypeStateModel& ts, const std::vector<int>& rows);

Rational evaluate_det_polynomial(const DetPolynomial& poly, const RatVector& weights);

// Generic identifiability of the type distribution: some row subset must
// carry a usage class with nonzero net coefficient. Falls back to seeded
// randomized polynomial identity testing above the enumeration cap.
Verdict verdict_typestate_generic(const TypeStateModel& ts,
                                  std::uint64_t seed = config::kDefaultSeed);

// Global identifiability on the interior of the weight simplex: some row
// subset whose state-matchings all share one parity; otherwise the generic
// verdict is returned.
Verdict verdict_typestate_global(const TypeStateModel& ts,
                                 std::uint64_t seed = config::kDefaultSeed);

// Given a separating state, global identifiability holds iff every possible
// reassignment of types is even. Throws std::invalid_argument when a_star
// does not separate.
Verdict reassignment_check(const TypeStateModel& ts, int a_star);

bool verify_state_matching(const TypeStateModel& ts, const StateMatching& sm);

}  // namespace typeident
