#include "typeident/matching.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "typeident/config.hpp"
#include "typeident/errors.hpp"
#include "typeident/linalg.hpp"

namespace typeident {

std::optional<Matching> first_matching(const PossibilityPattern& pattern,
                                       const std::vector<int>& rows) {
  const int r = pattern.r();
  std::vector<int> assignment(static_cast<size_t>(r), -1);
  std::vector<bool> used(rows.size(), false);
  std::function<bool(int)> place = [&](int t) {
    if (t == r) return true;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (used[i] || !pattern.allowed[static_cast<size_t>(rows[i])][static_cast<size_t>(t)]) continue;
      used[i] = true;
      assignment[static_cast<size_t>(t)] = rows[i];
      if (place(t + 1)) return true;
      used[i] = false;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return Matching{assignment, permutation_parity(assignment)};
}

std::optional<Matching> first_matching_with_parity(const PossibilityPattern& pattern,
                                                   const std::vector<int>& rows, int parity) {
  const int r = pattern.r();
  std::optional<Matching> found;
  std::vector<int> assignment(static_cast<size_t>(r), -1);
  std::vector<bool> used(rows.size(), false);
  std::function<bool(int)> walk = [&](int t) {
    if (t == r) {
      if (permutation_parity(assignment) == parity) {
        found = Matching{assignment, parity};
        return true;
      }
      return false;
    }
    for (size_t i = 0; i < rows.size(); ++i) {
      if (used[i] || !pattern.allowed[static_cast<size_t>(rows[i])][static_cast<size_t>(t)]) continue;
      used[i] = true;
      assignment[static_cast<size_t>(t)] = rows[i];
      const bool done = walk(t + 1);
      used[i] = false;
      if (done) return true;
    }
    return false;
  };
  walk(0);
  return found;
}

namespace {

// DFS until a matching of each parity has been seen.
std::optional<std::pair<Matching, Matching>> find_parity_pair(
    const PossibilityPattern& pattern, const std::vector<int>& rows) {
  const int r = pattern.r();
  std::optional<Matching> even, odd;
  std::vector<int> assignment(static_cast<size_t>(r), -1);
  std::vector<bool> used(rows.size(), false);
  std::function<bool(int)> walk = [&](int t) {
    if (t == r) {
      Matching m{assignment, permutation_parity(assignment)};
      (m.parity > 0 ? even : odd) = m;
      return even && odd;
    }
    for (size_t i = 0; i < rows.size(); ++i) {
      if (used[i] || !pattern.allowed[static_cast<size_t>(rows[i])][static_cast<size_t>(t)]) continue;
      used[i] = true;
      assignment[static_cast<size_t>(t)] = rows[i];
      const bool done = walk(t + 1);
      used[i] = false;
      if (done) return true;
    }
    return false;
  };
  walk(0);
  if (even && odd) return std::make_pair(*even, *odd);
  return std::nullopt;
}

void for_each_subset(int n, int r, const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> subset(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) subset[static_cast<size_t>(i)] = i;
  while (true) {
    if (visit(subset)) return;
    int i = r - 1;
    while (i >= 0 && subset[static_cast<size_t>(i)] == n - r + i) --i;
    if (i < 0) return;
    ++subset[static_cast<size_t>(i)];
    for (int j = i + 1; j < r; ++j) subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
  }
}

}  // namespace

int permutation_parity(const std::vector<int>& perm) {
  int inversions = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

MaxMatchingResult max_matching(const PossibilityPattern& pattern) {
  const int n = pattern.n();
  const int r = pattern.r();
  std::vector<int> match_alt(static_cast<size_t>(n), -1);  // alternative -> type
  std::vector<bool> visited;

  std::function<bool(int)> augment = [&](int t) {
    for (int k = 0; k < n; ++k) {
      if (!pattern.allowed[static_cast<size_t>(k)][static_cast<size_t>(t)] || visited[static_cast<size_t>(k)]) continue;
      visited[static_cast<size_t>(k)] = true;
      if (match_alt[static_cast<size_t>(k)] == -1 || augment(match_alt[static_cast<size_t>(k)])) {
        match_alt[static_cast<size_t>(k)] = t;
        return true;
      }
    }
    return false;
  };

  int size = 0;
  for (int t = 0; t < r; ++t) {
    visited.assign(static_cast<size_t>(n), false);
    if (augment(t)) ++size;
  }

  MaxMatchingResult result;
  result.size = size;
  if (size == r) {
    std::vector<int> assignment(static_cast<size_t>(r), -1);
    for (int k = 0; k < n; ++k) {
      if (match_alt[static_cast<size_t>(k)] >= 0) assignment[static_cast<size_t>(match_alt[static_cast<size_t>(k)])] = k;
    }
    result.matching = Matching{assignment, permutation_parity(assignment)};
  }
  return result;
}

std::vector<int> neighborhood(const PossibilityPattern& pattern, const std::vector<int>& types) {
  std::vector<int> out;
  for (int k = 0; k < pattern.n(); ++k) {
    for (int t : types) {
      if (pattern.allowed[static_cast<size_t>(k)][static_cast<size_t>(t)]) {
        out.push_back(k);
        break;
      }
    }
  }
  return out;
}

std::vector<int> hall_deficient_set(const PossibilityPattern& pattern) {
  const int r = pattern.r();
  std::vector<int> found;
  for (int s = 1; s <= r && found.empty(); ++s) {
    for_each_subset(r, s, [&](const std::vector<int>& subset) {
      if (static_cast<int>(neighborhood(pattern, subset).size()) < s) {
        found = subset;
        return true;
      }
      return false;
    });
  }
  return found;
}

std::vector<Matching> enumerate_matchings(const PossibilityPattern& pattern,
                                          const std::vector<int>& rows) {
  const int r = pattern.r();
  if (static_cast<int>(rows.size()) != r) {
    throw std::invalid_argument("enumerate_matchings: row subset size != number of types");
  }
  if (r > config::kEnumerationCap) {
    throw CapExceededError(
        "enumeration refused: " + std::to_string(r) + " types exceeds the cap of " +
        std::to_string(config::kEnumerationCap) + "; use the permanent-based tests");
  }
  // Visiting rows in increasing alternative order makes the output
  // lexicographically sorted by assignment.
  std::vector<int> sorted_rows = rows;
  std::sort(sorted_rows.begin(), sorted_rows.end());

  std::vector<Matching> out;
  std::vector<int> assignment(static_cast<size_t>(r), -1);
  std::vector<bool> used(sorted_rows.size(), false);
  std::function<void(int)> walk = [&](int t) {
    if (t == r) {
      out.push_back(Matching{assignment, permutation_parity(assignment)});
      return;
    }
    for (size_t i = 0; i < sorted_rows.size(); ++i) {
      if (used[i] || !pattern.allowed[static_cast<size_t>(sorted_rows[i])][static_cast<size_t>(t)]) continue;
      used[i] = true;
      assignment[static_cast<size_t>(t)] = sorted_rows[i];
      walk(t + 1);
      used[i] = false;
    }
  };
  walk(0);
  return out;
}

SquarePatternStats square_stats(const PossibilityPattern& pattern,
                                const std::vector<int>& rows) {
  const int r = pattern.r();
  if (static_cast<int>(rows.size()) != r) {
    throw std::invalid_argument("square_stats: row subset size != number of types");
  }
  if (r > config::kPermanentCap) {
    throw CapExceededError("permanent intractable: " + std::to_string(r) +
                           " types exceeds the cap of " + std::to_string(config::kPermanentCap));
  }
  // Parities are taken relative to the canonical (sorted) row order.
  std::vector<int> sorted_rows = rows;
  std::sort(sorted_rows.begin(), sorted_rows.end());

  // Permanent of the 0/1 minor = number of full matchings. Subset DP over
  // matched alternatives; counts stay below r! <= 20! which fits in 64 bits.
  std::vector<unsigned long long> dp(1ull << r, 0);
  dp[0] = 1;
  for (unsigned mask = 1; mask < (1u << r); ++mask) {
    const int t = __builtin_popcount(mask) - 1;
    unsigned long long total = 0;
    for (int i = 0; i < r; ++i) {
      if (!(mask & (1u << i))) continue;
      if (!pattern.allowed[static_cast<size_t>(sorted_rows[static_cast<size_t>(i)])][static_cast<size_t>(t)]) continue;
      total += dp[mask ^ (1u << i)];
    }
    dp[mask] = total;
  }

  // Signed count = determinant of the 0/1 minor (Leibniz expansion puts
  // +1/-1 per matching by parity).
  RatMatrix minor(static_cast<size_t>(r), RatVector(static_cast<size_t>(r), Rational(0)));
  for (int i = 0; i < r; ++i)
    for (int t = 0; t < r; ++t)
      if (pattern.allowed[static_cast<size_t>(sorted_rows[static_cast<size_t>(i)])][static_cast<size_t>(t)]) minor[static_cast<size_t>(i)][static_cast<size_t>(t)] = 1;
  const Rational det = linalg::determinant(minor);

  SquarePatternStats stats;
  stats.rows = sorted_rows;
  stats.permanent = static_cast<long long>(dp[(1u << r) - 1]);
  stats.signed_count = static_cast<long long>(det.get_num().get_si());
  return stats;
}

Verdict verdict_general(const PossibilityPattern& pattern, bool verbose) {
  const int n = pattern.n();
  const int r = pattern.r();

  const MaxMatchingResult mm = max_matching(pattern);
  if (n < r || mm.size < r) {
    Verdict v;
    v.klass = IdentClass::Structural;
    v.provenance = "hall-deficiency";
    DeficientSetWitness w;
    w.types = hall_deficient_set(pattern);
    w.neighborhood = neighborhood(pattern, w.types);
    v.witnesses.push_back(w);
    return v;
  }

  // Scan r-subsets of alternatives in lexicographic order for a minor whose
  // matchings all share one parity; the first hit decides.
  std::vector<RowSubsetWitness> qualifying;
  std::vector<std::vector<int>> subsets_with_matching;
  bool found_global = false;
  std::vector<int> subset(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) subset[static_cast<size_t>(i)] = i;
  while (true) {
    const SquarePatternStats stats = square_stats(pattern, subset);
    if (stats.permanent > 0) {
      subsets_with_matching.push_back(subset);
      if (stats.signed_count == stats.permanent || stats.signed_count == -stats.permanent) {
        RowSubsetWitness w;
        w.rows = subset;
        w.permanent = stats.permanent;
        w.signed_count = stats.signed_count;
        const auto m = first_matching(pattern, subset);
        w.matching = MatchingWitness{m->assignment, m->parity};
        qualifying.push_back(w);
        found_global = true;
        if (!verbose) break;
      }
    }
    int i = r - 1;
    while (i >= 0 && subset[static_cast<size_t>(i)] == n - r + i) --i;
    if (i < 0) break;
    ++subset[static_cast<size_t>(i)];
    for (int j = i + 1; j < r; ++j) subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
  }

  Verdict v;
  if (found_global) {
    v.klass = IdentClass::Global;
    v.provenance = qualifying.front().permanent == 1 ? "unique-matching" : "uniform-parity-minor";
    for (const auto& w : qualifying) v.witnesses.push_back(w);
    return v;
  }

  v.klass = IdentClass::GenericOnly;
  v.provenance = "matching-exists";
  v.witnesses.push_back(MatchingWitness{mm.matching->assignment, mm.matching->parity});
  for (const auto& rows : subsets_with_matching) {
    const auto pair = find_parity_pair(pattern, rows);
    if (pair) {
      OppositeParityPairWitness w;
      w.rows = rows;
      w.first = MatchingWitness{pair->first.assignment, pair->first.parity};
      w.second = MatchingWitness{pair->second.assignment, pair->second.parity};
      v.witnesses.push_back(w);
    }
  }
  return v;
}

bool verify_matching(const PossibilityPattern& pattern, const Matching& m) {
  if (static_cast<int>(m.assignment.size()) != pattern.r()) return false;
  std::vector<bool> used(static_cast<size_t>(pattern.n()), false);
  for (int t = 0; t < pattern.r(); ++t) {
    const int k = m.assignment[static_cast<size_t>(t)];
    if (k < 0 || k >= pattern.n()) return false;
    if (!pattern.allowed[static_cast<size_t>(k)][static_cast<size_t>(t)]) return false;
    if (used[static_cast<size_t>(k)]) return false;
    used[static_cast<size_t>(k)] = true;
  }
  return permutation_parity(m.assignment) == m.parity;
}

bool verify_deficient_set(const PossibilityPattern& pattern, const std::vector<int>& types) {
  if (types.empty()) return false;
  return static_cast<int>(neighborhood(pattern, types).size()) < static_cast<int>(types.size());
}

}  // namespace typeident
