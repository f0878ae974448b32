#pragma once

#include <cstdint>
#include <vector>

#include "typeident/config.hpp"
#include "typeident/model.hpp"
#include "typeident/verdict.hpp"

namespace typeident {

// A subspace of Q^dim held as a canonical reduced-row-echelon basis, so
// equal subspaces compare equal.
struct RationalSubspace {
  int ambient = 0;
  RatMatrix basis;  // basis vectors as rows; empty for the zero subspace

  int dim() const { return static_cast<int>(basis.size()); }
  bool trivial() const { return basis.empty(); }
  bool operator==(const RationalSubspace&) const = default;
};

// e^x - e^y in alternative space.
struct SplitVector {
  int x = 0;
  int y = 0;
  RatVector vector(int n) const;
};

RationalSubspace nullspace(const RatMatrix& m);
RationalSubspace nullspace(const ConcreteMatrix& m);

RationalSubspace nullspace_intersection(const RationalSubspace& a, const RationalSubspace& b);

// Is e^x - e^y in the span of M's columns indexed by S? Exact, at the
// given concrete matrix. Throws std::invalid_argument for empty S.
bool typical_split_test(const ConcreteMatrix& m, const SplitVector& split,
                        const std::vector<int>& types);

// Generic identifiability for a two-state model via pooled-pair split
// analysis. Square models are required; n > r inputs take the disjunction
// over all r-row subsets. Span membership is sampled at random interior
// weight vectors; disagreeing samples escalate the sample count.
Verdict verdict_nullspace(const TypeStateModel& ts, std::uint64_t seed = config::kDefaultSeed);

}  // namespace typeident
