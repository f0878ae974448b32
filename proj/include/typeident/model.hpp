#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "typeident/rational.hpp"

namespace typeident {

// The structural-zero pattern of the type-conditional choice matrix:
// allowed[k][l] is true iff type l can choose alternative k with positive
// probability.
struct PossibilityPattern {
  std::vector<std::string> alternatives;     // size n
  std::vector<std::string> types;            // size r
  std::vector<std::vector<bool>> allowed;    // n x r

  int n() const { return static_cast<int>(alternatives.size()); }
  int r() const { return static_cast<int>(types.size()); }
};

// A concrete column-stochastic instantiation of a pattern. Zeros are legal
// at allowed positions (boundary points of the parameter space); positive
// entries are legal only at allowed positions.
struct ConcreteMatrix {
  PossibilityPattern pattern;
  RatMatrix values;  // n x r

  int n() const { return pattern.n(); }
  int r() const { return pattern.r(); }
};

// Types choose deterministically given a common random state: in state a,
// type t picks alternative choice[t][a].
struct TypeStateModel {
  std::vector<std::string> alternatives;
  std::vector<std::string> types;
  std::vector<std::string> states;
  std::vector<std::vector<int>> choice;        // [type][state] -> alternative index
  std::optional<RatVector> weights;            // per-state probabilities, sum 1

  int n() const { return static_cast<int>(alternatives.size()); }
  int r() const { return static_cast<int>(types.size()); }
  int num_states() const { return static_cast<int>(states.size()); }
};

struct TypeDistribution {
  RatVector probs;  // length r, simplex
};

struct ObservedShares {
  RatVector probs;  // length n, simplex
};

using Occasion = std::variant<PossibilityPattern, TypeStateModel>;

// Between one and three choice occasions over a shared ordered type list.
struct MultiOccasionModel {
  std::vector<std::string> types;
  std::vector<Occasion> occasions;

  int r() const { return static_cast<int>(types.size()); }
  int J() const { return static_cast<int>(occasions.size()); }
};

// Joint distribution of choices across three occasions.
struct ChoiceTensor {
  std::array<int, 3> dims{};
  RatVector entries;  // row-major: ((k1 * dims[1]) + k2) * dims[2] + k3

  const Rational& at(int k1, int k2, int k3) const {
    return entries[static_cast<size_t>((k1 * dims[1] + k2) * dims[2] + k3)];
  }
  Rational& at(int k1, int k2, int k3) {
    return entries[static_cast<size_t>((k1 * dims[1] + k2) * dims[2] + k3)];
  }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const PossibilityPattern& p);
ValidationReport validate(const ConcreteMatrix& m);
ValidationReport validate(const TypeStateModel& ts);
ValidationReport validate(const TypeDistribution& pi);
ValidationReport validate(const ObservedShares& p);
ValidationReport validate(const MultiOccasionModel& model);
ValidationReport validate(const ChoiceTensor& t);

// The 0/1 matrix of the state's deterministic choice profile.
RatMatrix one_hot_matrix(const TypeStateModel& ts, int state);

// allowed[k][l] = true iff some state sends type l to alternative k.
PossibilityPattern induced_pattern(const TypeStateModel& ts);

// M = sum_a f(a) * M^a. Throws ValidationError on a bad weight vector.
ConcreteMatrix assemble_matrix(const TypeStateModel& ts, const RatVector& weights);

// p = M * pi, exact.
ObservedShares aggregate_shares(const ConcreteMatrix& m, const TypeDistribution& pi);

// S[k1][k2][k3] = sum_h pi(h) * M1(k1,h) * M2(k2,h) * M3(k3,h).
ChoiceTensor build_tensor(const std::array<ConcreteMatrix, 3>& occasions,
                          const TypeDistribution& pi);

}  // namespace typeident
