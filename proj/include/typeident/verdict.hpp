#pragma once

#include <string>
#include <variant>
#include <vector>

#include "typeident/rational.hpp"

namespace typeident {

enum class IdentClass {
  Global,       // identifiable for every admissible parameter value
  GenericOnly,  // identifiable off a measure-zero set
  Structural,   // identifiable nowhere
  Inconclusive, // sufficient condition failed; no converse available
};

inline std::string ident_class_name(IdentClass k) {
  switch (k) {
    case IdentClass::Global: return "global";
    case IdentClass::GenericOnly: return "generic";
    case IdentClass::Structural: return "structural";
    case IdentClass::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

// assignment[t] = alternative index; parity is +1 (even) or -1 (odd)
// relative to the canonical input order.
struct MatchingWitness {
  std::vector<int> assignment;
  int parity = 1;
};

struct RowSubsetWitness {
  std::vector<int> rows;
  long long permanent = 0;
  long long signed_count = 0;
  MatchingWitness matching;
};

struct OppositeParityPairWitness {
  std::vector<int> rows;
  MatchingWitness first;
  MatchingWitness second;
};

struct DeficientSetWitness {
  std::vector<int> types;
  std::vector<int> neighborhood;
};

// A state-usage class of the minor's determinant polynomial together with
// its net (even minus odd) count.
struct UsageClassWitness {
  std::vector<int> rows;
  std::vector<int> usage;
  long long net = 0;
};

struct SharedNullspaceWitness {
  RatVector vector;
};

struct ReassignmentWitness {
  std::vector<int> permutation;  // an odd possible reassignment
  int parity = -1;
};

struct PooledPairWitness {
  int state_a = 0;
  int state_b = 0;
  int type_1 = 0;
  int type_2 = 0;
  bool separated_by_b = false;
  bool split_reachable = false;
};

struct MatchabilityWitness {
  std::vector<int> v;  // per-occasion matchability indices
  int required = 0;    // 2r + 2
};

using Witness =
    std::variant<MatchingWitness, RowSubsetWitness, OppositeParityPairWitness,
                 DeficientSetWitness, UsageClassWitness, SharedNullspaceWitness,
                 ReassignmentWitness, PooledPairWitness, MatchabilityWitness>;

struct Verdict {
  IdentClass klass = IdentClass::Inconclusive;
  std::string provenance;  // which decision rule produced it
  bool probabilistic = false;
  std::vector<Witness> witnesses;
  std::string note;
};

}  // namespace typeident
