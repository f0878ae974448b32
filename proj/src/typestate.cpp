#include "typeident/typestate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "typeident/errors.hpp"
#include "typeident/linalg.hpp"
#include "typeident/rng.hpp"

namespace typeident {

namespace {

bool enumeration_feasible(int num_states, int r) {
  double combos = 1.0;
  for (int i = 0; i < r; ++i) {
    combos *= num_states;
    if (combos > static_cast<double>(config::kStateEnumerationCap)) return false;
  }
  return true;
}

std::vector<std::vector<int>> row_subsets(int n, int r) {
  std::vector<std::vector<int>> out;
  if (r > n) return out;
  std::vector<int> subset(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) subset[static_cast<size_t>(i)] = i;
  while (true) {
    out.push_back(subset);
    int i = r - 1;
    while (i >= 0 && subset[static_cast<size_t>(i)] == n - r + i) --i;
    if (i < 0) break;
    ++subset[static_cast<size_t>(i)];
    for (int j = i + 1; j < r; ++j) subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
  }
  return out;
}

Verdict structural_no_matching(const TypeStateModel& ts) {
  Verdict v;
  v.klass = IdentClass::Structural;
  v.provenance = "hall-deficiency";
  const PossibilityPattern pattern = induced_pattern(ts);
  DeficientSetWitness w;
  w.types = hall_deficient_set(pattern);
  w.neighborhood = neighborhood(pattern, w.types);
  v.witnesses.push_back(w);
  return v;
}

// Randomized polynomial identity testing at prime-denominator weight
// vectors; used only above the enumeration cap.
Verdict pit_generic_fallback(const TypeStateModel& ts, std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<long> primes = primes_near_1e4(config::kPitSamples);
  for (int i = 0; i < config::kPitSamples; ++i) {
    const RatVector f = random_prime_simplex_point(rng, ts.num_states(), primes[static_cast<size_t>(i)]);
    const ConcreteMatrix m = assemble_matrix(ts, f);
    if (linalg::rank(m.values) == ts.r()) {
      Verdict v;
      v.klass = IdentClass::GenericOnly;
      v.provenance = "randomized-identity-test";
      v.probabilistic = true;
      v.note = "full-rank certificate at a sampled weight vector";
      return v;
    }
  }
  Verdict v;
  v.klass = IdentClass::Structural;
  v.provenance = "randomized-identity-test";
  v.probabilistic = true;
  v.note = "rank deficient at all " + std::to_string(config::kPitSamples) + " sampled weight vectors";
  return v;
}

Verdict pit_global_fallback(const TypeStateModel& ts, std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<long> primes = primes_near_1e4(config::kPitSamples);
  std::vector<RatVector> samples;
  for (int i = 0; i < config::kPitSamples; ++i) {
    samples.push_back(random_prime_simplex_point(rng, ts.num_states(), primes[static_cast<size_t>(i)]));
  }
  for (const auto& rows : row_subsets(ts.n(), ts.r())) {
    int sign = 0;
    bool uniform = true;
    for (const auto& f : samples) {
      const ConcreteMatrix m = assemble_matrix(ts, f);
      const Rational d = linalg::determinant(linalg::select_rows(m.values, rows));
      const int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
      if (s == 0 || (sign != 0 && s != sign)) {
        uniform = false;
        break;
      }
      sign = s;
    }
    if (uniform && sign != 0) {
      Verdict v;
      v.klass = IdentClass::Global;
      v.provenance = "randomized-identity-test";
      v.probabilistic = true;
      v.note = "minor determinant kept one sign across all sampled weight vectors";
      return v;
    }
  }
  return pit_generic_fallback(ts, seed);
}

}  // namespace

std::vector<int> separating_states(const TypeStateModel& ts) {
  std::vector<int> out;
  for (int a = 0; a < ts.num_states(); ++a) {
    std::vector<bool> chosen(static_cast<size_t>(ts.n()), false);
    bool injective = true;
    for (int t = 0; t < ts.r() && injective; ++t) {
      const int k = ts.choice[static_cast<size_t>(t)][static_cast<size_t>(a)];
      if (chosen[static_cast<size_t>(k)]) injective = false;
      chosen[static_cast<size_t>(k)] = true;
    }
    if (injective) out.push_back(a);
  }
  return out;
}

std::vector<StateMatching> enumerate_state_matchings(const TypeStateModel& ts,
                                                     const std::vector<int>& rows) {
  const int r = ts.r();
  if (static_cast<int>(rows.size()) != r) {
    throw std::invalid_argument("enumerate_state_matchings: row subset size != number of types");
  }
  if (!enumeration_feasible(ts.num_states(), r)) {
    throw CapExceededError("state-matching enumeration refused: |A|^r exceeds " +
                           std::to_string(config::kStateEnumerationCap));
  }
  std::vector<int> sorted_rows = rows;
  std::sort(sorted_rows.begin(), sorted_rows.end());

  // Per type, the (alternative, state) options within the row subset, in
  // lexicographic order.
  std::vector<std::vector<std::pair<int, int>>> options(static_cast<size_t>(r));
  for (int t = 0; t < r; ++t) {
    for (int k : sorted_rows) {
      for (int a = 0; a < ts.num_states(); ++a) {
        if (ts.choice[static_cast<size_t>(t)][static_cast<size_t>(a)] == k) options[static_cast<size_t>(t)].push_back({k, a});
      }
    }
  }

  std::vector<StateMatching> out;
  std::vector<int> assignment(static_cast<size_t>(r), -1);
  std::vector<int> state_choice(static_cast<size_t>(r), -1);
  std::vector<bool> used(static_cast<size_t>(ts.n()), false);
  std::function<void(int)> walk = [&](int t) {
    if (t == r) {
      StateMatching sm;
      sm.matching = Matching{assignment, permutation_parity(assignment)};
      sm.state_choice = state_choice;
      sm.usage.assign(static_cast<size_t>(ts.num_states()), 0);
      for (int s : state_choice) ++sm.usage[static_cast<size_t>(s)];
      out.push_back(std::move(sm));
      return;
    }
    for (const auto& [k, a] : options[static_cast<size_t>(t)]) {
      if (used[static_cast<size_t>(k)]) continue;
      used[static_cast<size_t>(k)] = true;
      assignment[static_cast<size_t>(t)] = k;
      state_choice[static_cast<size_t>(t)] = a;
      walk(t + 1);
      used[static_cast<size_t>(k)] = false;
    }
  };
  walk(0);
  return out;
}

DetPolynomial det_polynomial(const TypeStateModel& ts, const std::vector<int>& rows) {
  DetPolynomial poly;
  poly.rows = rows;
  std::sort(poly.rows.begin(), poly.rows.end());
  for (const auto& sm : enumerate_state_matchings(ts, poly.rows)) {
    poly.coeffs[sm.usage] += sm.matching.parity;
  }
  return poly;
}

Rational evaluate_det_polynomial(const DetPolynomial& poly, const RatVector& weights) {
  Rational total(0);
  for (const auto& [usage, net] : poly.coeffs) {
    if (net == 0) continue;
    Rational term(static_cast<long>(net));
    for (size_t a = 0; a < usage.size(); ++a) {
      for (int i = 0; i < usage[a]; ++i) term *= weights[a];
    }
    total += term;
  }
  return total;
}

Verdict verdict_typestate_generic(const TypeStateModel& ts, std::uint64_t seed) {
  if (ts.n() < ts.r()) return structural_no_matching(ts);
  if (!enumeration_feasible(ts.num_states(), ts.r())) return pit_generic_fallback(ts, seed);

  bool any_state_matching = false;
  std::optional<UsageClassWitness> cancelled;
  for (const auto& rows : row_subsets(ts.n(), ts.r())) {
    const auto sms = enumerate_state_matchings(ts, rows);
    if (sms.empty()) continue;
    any_state_matching = true;
    std::map<std::vector<int>, long long> net;
    for (const auto& sm : sms) net[sm.usage] += sm.matching.parity;
    // Report the class of the first state-matching whose class survives
    // cancellation.
    for (const auto& sm : sms) {
      if (net[sm.usage] != 0) {
        Verdict v;
        v.klass = IdentClass::GenericOnly;
        v.provenance = "usage-class-net-coefficient";
        v.witnesses.push_back(UsageClassWitness{rows, sm.usage, net[sm.usage]});
        return v;
      }
    }
    if (!cancelled) {
      cancelled = UsageClassWitness{rows, sms.front().usage, 0};
    }
  }

  if (!any_state_matching) return structural_no_matching(ts);
  Verdict v;
  v.klass = IdentClass::Structural;
  v.provenance = "state-matching-cancellation";
  v.witnesses.push_back(*cancelled);
  return v;
}

Verdict verdict_typestate_global(const TypeStateModel& ts, std::uint64_t seed) {
  if (ts.n() < ts.r()) return structural_no_matching(ts);
  if (!enumeration_feasible(ts.num_states(), ts.r())) return pit_global_fallback(ts, seed);

  for (const auto& rows : row_subsets(ts.n(), ts.r())) {
    const auto sms = enumerate_state_matchings(ts, rows);
    if (sms.empty()) continue;
    long long net = 0;
    for (const auto& sm : sms) net += sm.matching.parity;
    if (std::llabs(net) == static_cast<long long>(sms.size())) {
      Verdict v;
      v.klass = IdentClass::Global;
      v.provenance = "uniform-parity-state-matchings";
      RowSubsetWitness w;
      w.rows = rows;
      w.permanent = static_cast<long long>(sms.size());
      w.signed_count = net;
      w.matching = MatchingWitness{sms.front().matching.assignment, sms.front().matching.parity};
      v.witnesses.push_back(w);
      return v;
    }
  }
  return verdict_typestate_generic(ts, seed);
}

Verdict reassignment_check(const TypeStateModel& ts, int a_star) {
  const auto separating = separating_states(ts);
  if (std::find(separating.begin(), separating.end(), a_star) == separating.end()) {
    throw std::invalid_argument("reassignment_check: state does not separate types");
  }
  const int r = ts.r();

  // reach[t'][t] = true iff type t can, in some state, choose the
  // alternative picked by t' in the reference state. Bijections inside the
  // relation are exactly the possible reassignments.
  PossibilityPattern reach;
  reach.alternatives = ts.types;
  reach.types = ts.types;
  reach.allowed.assign(static_cast<size_t>(r), std::vector<bool>(static_cast<size_t>(r), false));
  for (int t = 0; t < r; ++t) {
    for (int target = 0; target < r; ++target) {
      const int alt = ts.choice[static_cast<size_t>(target)][static_cast<size_t>(a_star)];
      for (int a = 0; a < ts.num_states(); ++a) {
        if (ts.choice[static_cast<size_t>(t)][static_cast<size_t>(a)] == alt) {
          reach.allowed[static_cast<size_t>(target)][static_cast<size_t>(t)] = true;
          break;
        }
      }
    }
  }

  std::vector<int> all_rows(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) all_rows[static_cast<size_t>(i)] = i;
  const SquarePatternStats stats = square_stats(reach, all_rows);

  Verdict v;
  if (stats.signed_count == stats.permanent) {  // identity is even, so all even
    v.klass = IdentClass::Global;
    v.provenance = "even-reassignments-only";
    v.witnesses.push_back(RowSubsetWitness{all_rows, stats.permanent, stats.signed_count, {}});
  } else {
    v.klass = IdentClass::GenericOnly;
    v.provenance = "odd-reassignment";
    const auto odd = first_matching_with_parity(reach, all_rows, -1);
    v.witnesses.push_back(ReassignmentWitness{odd->assignment, -1});
  }
  return v;
}

bool verify_state_matching(const TypeStateModel& ts, const StateMatching& sm) {
  if (!verify_matching(induced_pattern(ts), sm.matching)) return false;
  if (sm.state_choice.size() != sm.matching.assignment.size()) return false;
  std::vector<int> usage(static_cast<size_t>(ts.num_states()), 0);
  for (int t = 0; t < ts.r(); ++t) {
    const int a = sm.state_choice[static_cast<size_t>(t)];
    if (a < 0 || a >= ts.num_states()) return false;
    if (ts.choice[static_cast<size_t>(t)][static_cast<size_t>(a)] != sm.matching.assignment[static_cast<size_t>(t)]) return false;
    ++usage[static_cast<size_t>(a)];
  }
  return usage == sm.usage;
}

}  // namespace typeident
