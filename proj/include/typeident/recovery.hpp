#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "typeident/config.hpp"
#include "typeident/model.hpp"
#include "typeident/nullspace.hpp"
#include "typeident/rng.hpp"

namespace typeident {

// Exact solution set of a linear inverse problem, intersected with simplex
// diagnostics. Feasibility is reported, never enforced.
struct SolutionSet {
  RatVector particular;
  RationalSubspace kernel;
  bool unique = false;
  bool particular_in_simplex = false;
  // Per kernel direction d: the closed range of c keeping particular + c*d
  // entrywise nonnegative (entry sums are preserved along the kernel).
  std::vector<std::pair<Rational, Rational>> feasible_segments;
};

// Exact solve of M*pi = p. Throws InconsistentDataError when p is outside
// the column span.
SolutionSet solve_distribution(const ConcreteMatrix& m, const ObservedShares& p);

// Exact solution set of sum_a f(a)*M^a = M over the state weights.
SolutionSet solve_state_weights(const TypeStateModel& ts, const ConcreteMatrix& m);

struct RankReport {
  int samples = 0;
  int full_rank_count = 0;
  double full_rank_fraction = 0.0;
  // Smallest singular value across samples (floating point, reporting only).
  double min_singular_min = 0.0;
  double min_singular_mean = 0.0;
  double min_singular_max = 0.0;
};

// Fraction of random rational-grid instantiations with exact full column
// rank. Honors TYPEIDENT_THREADS for per-sample parallelism; results are
// independent of the schedule.
RankReport montecarlo_rank(const Occasion& occasion, int samples, std::uint64_t seed);

struct RandomInstance {
  ConcreteMatrix matrix;
  std::optional<RatVector> weights;  // present for type-state occasions
  TypeDistribution pi;
  ObservedShares shares;
};

// Deterministic per seed: grid-sampled parameters, interior pi, exact
// aggregated shares.
RandomInstance random_instance(const Occasion& occasion, std::uint64_t seed);

// Grid instantiation of one occasion (positive entries on the allowed
// positions, columns renormalized; or assembled from random interior
// weights).
ConcreteMatrix sample_occasion_matrix(const Occasion& occasion, Rng& rng);

}  // namespace typeident
