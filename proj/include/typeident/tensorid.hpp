#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "typeident/config.hpp"
#include "typeident/model.hpp"
#include "typeident/verdict.hpp"

namespace typeident {

// Largest v such that every v-subset of types admits a matching into the
// occasion's alternatives; equals r exactly when no Hall-deficient subset
// exists.
struct MatchabilityIndex {
  int v = 0;
  std::optional<DeficientSetWitness> deficient;
};

MatchabilityIndex matchability_index(const PossibilityPattern& pattern);

// Occasions given as (or reduced to) possibility patterns. Identifiable
// when the matchability indices sum to at least 2r + 2; the condition is
// sufficient only, so failure reports Inconclusive.
Verdict verdict_three_occasion(const MultiOccasionModel& model);

// Type-state occasions: identifiable when every occasion passes the
// generic type-state verdict (r = 1 is trivially identifiable).
Verdict verdict_typestate_three_occasion(const MultiOccasionModel& model);

// Empirical lower bound on the generic Kruskal column rank: the minimum
// over random rational instantiations of the exact Kruskal column rank.
int kruskal_rank_sampled(const Occasion& occasion, std::uint64_t seed,
                         int samples = config::kPitSamples);

struct ProbeReport {
  int trials = 0;
  int collisions = 0;
  bool min_distance_valid = false;
  Rational min_distance;  // minimum entrywise max-distance over sampled pairs
};

// Samples pairs of parameter points that are inequivalent modulo
// simultaneous column permutation and compares their tensors entrywise.
ProbeReport distinguishability_probe(const MultiOccasionModel& model, std::uint64_t seed,
                                     int trials);

// Canonical order of types: sort columns of all occasions (with pi
// attached) lexicographically, so permutation-equivalent parameter points
// compare equal.
struct TensorParameters {
  std::vector<RatMatrix> occasion_values;  // per occasion, n_j x r
  RatVector pi;
};

TensorParameters canonicalize_columns(TensorParameters params);

}  // namespace typeident
