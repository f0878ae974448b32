#include "typeident/nullspace.hpp"

#include <algorithm>
#include <stdexcept>

#include "typeident/errors.hpp"
#include "typeident/linalg.hpp"
#include "typeident/rng.hpp"

namespace typeident {

namespace {

// Columns of the restricted assembled matrix spanned by z with z_t = z_t',
// i.e. the pair-sum direction plus every other type's column. A pooled
// pair's split landing in this span produces a null vector of the minor at
// every weight vector where membership holds.
bool split_reachable_at(const RatMatrix& minor, int t1, int t2, const RatVector& split) {
  const int r = static_cast<int>(minor[0].size());
  RatMatrix cols(minor.size(), RatVector(0));
  RatVector pair_sum(minor.size(), Rational(0));
  for (size_t i = 0; i < minor.size(); ++i) {
    pair_sum[i] = minor[i][static_cast<size_t>(t1)] + minor[i][static_cast<size_t>(t2)];
  }
  for (size_t i = 0; i < minor.size(); ++i) cols[i].push_back(pair_sum[i]);
  for (int s = 0; s < r; ++s) {
    if (s == t1 || s == t2) continue;
    for (size_t i = 0; i < minor.size(); ++i) cols[i].push_back(minor[i][static_cast<size_t>(s)]);
  }
  std::vector<int> all(static_cast<size_t>(cols[0].size()));
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return linalg::in_column_span(cols, all, split);
}

// Majority-free sampled answer: all samples must agree; escalate by the
// configured factor on disagreement.
bool sampled_split_reachable(const TypeStateModel& ts, const std::vector<int>& rows,
                             int t1, int t2, const RatVector& split, Rng& rng) {
  int samples = config::kTypicalitySamples;
  while (true) {
    bool first = true;
    bool answer = false;
    bool agreed = true;
    for (int i = 0; i < samples; ++i) {
      const RatVector f = random_simplex_point(rng, ts.num_states(), config::kGridDenominator);
      const ConcreteMatrix m = assemble_matrix(ts, f);
      const RatMatrix minor = linalg::select_rows(m.values, rows);
      const bool reachable = split_reachable_at(minor, t1, t2, split);
      if (first) {
        answer = reachable;
        first = false;
      } else if (reachable != answer) {
        agreed = false;
        break;
      }
    }
    if (agreed) return answer;
    samples *= config::kTypicalityEscalation;
    if (samples > config::kTypicalityMaxSamples) {
      throw CapExceededError("typicality sampling did not stabilize");
    }
  }
}

struct SquareCheck {
  bool identifiable = false;
  std::vector<PooledPairWitness> pairs;  // checks performed, or the failure
};

// Pooled-pair analysis of the r x r restriction to `rows`.
SquareCheck check_rows(const TypeStateModel& ts, const std::vector<int>& rows, Rng& rng) {
  const int r = ts.r();
  std::vector<int> row_pos(static_cast<size_t>(ts.n()), -1);
  for (size_t i = 0; i < rows.size(); ++i) row_pos[static_cast<size_t>(rows[i])] = static_cast<int>(i);

  SquareCheck result;

  // A type choosing outside the subset in both states gives a zero column.
  for (int t = 0; t < r; ++t) {
    bool inside = false;
    for (int a = 0; a < ts.num_states(); ++a) {
      inside = inside || row_pos[static_cast<size_t>(ts.choice[static_cast<size_t>(t)][static_cast<size_t>(a)])] >= 0;
    }
    if (!inside) return result;
  }

  for (const auto& [s0, s1] : {std::pair{0, 1}, std::pair{1, 0}}) {
    bool ok = true;
    std::vector<PooledPairWitness> checked;
    for (int t1 = 0; t1 < r && ok; ++t1) {
      for (int t2 = t1 + 1; t2 < r && ok; ++t2) {
        // Pooled on the restriction: equal one-hot columns, or both
        // choices outside the subset.
        const int c1 = row_pos[static_cast<size_t>(ts.choice[static_cast<size_t>(t1)][static_cast<size_t>(s0)])];
        const int c2 = row_pos[static_cast<size_t>(ts.choice[static_cast<size_t>(t2)][static_cast<size_t>(s0)])];
        if (c1 != c2) continue;

        PooledPairWitness w;
        w.state_a = s0;
        w.state_b = s1;
        w.type_1 = t1;
        w.type_2 = t2;

        const int d1 = row_pos[static_cast<size_t>(ts.choice[static_cast<size_t>(t1)][static_cast<size_t>(s1)])];
        const int d2 = row_pos[static_cast<size_t>(ts.choice[static_cast<size_t>(t2)][static_cast<size_t>(s1)])];
        RatVector split(static_cast<size_t>(r), Rational(0));
        if (d1 >= 0) split[static_cast<size_t>(d1)] += 1;
        if (d2 >= 0) split[static_cast<size_t>(d2)] -= 1;
        const bool separated = !(d1 == d2);
        w.separated_by_b = separated;
        if (!separated) {
          ok = false;
          checked.push_back(w);
          break;
        }
        w.split_reachable = sampled_split_reachable(ts, rows, t1, t2, split, rng);
        checked.push_back(w);
        if (w.split_reachable) ok = false;
      }
    }
    if (ok) {
      result.identifiable = true;
      result.pairs = checked;
      return result;
    }
    if (result.pairs.empty() && !checked.empty()) result.pairs = {checked.back()};
  }
  return result;
}

}  // namespace

RatVector SplitVector::vector(int n) const {
  RatVector v(static_cast<size_t>(n), Rational(0));
  v[static_cast<size_t>(x)] = 1;
  v[static_cast<size_t>(y)] = -1;
  return v;
}

RationalSubspace nullspace(const RatMatrix& m) {
  RationalSubspace s;
  s.ambient = m.empty() ? 0 : static_cast<int>(m[0].size());
  s.basis = linalg::kernel_basis(m);
  return s;
}

RationalSubspace nullspace(const ConcreteMatrix& m) { return nullspace(m.values); }

RationalSubspace nullspace_intersection(const RationalSubspace& a, const RationalSubspace& b) {
  if (a.ambient != b.ambient) {
    throw std::invalid_argument("nullspace_intersection: ambient dimensions differ");
  }
  RationalSubspace out;
  out.ambient = a.ambient;
  out.basis = linalg::subspace_intersection(a.basis, b.basis, a.ambient);
  return out;
}

bool typical_split_test(const ConcreteMatrix& m, const SplitVector& split,
                        const std::vector<int>& types) {
  if (types.empty()) throw std::invalid_argument("typical_split_test: empty type set");
  return linalg::in_column_span(m.values, types, split.vector(m.n()));
}

Verdict verdict_nullspace(const TypeStateModel& ts, std::uint64_t seed) {
  if (ts.num_states() != 2) {
    throw std::invalid_argument("verdict_nullspace: exactly two states required");
  }
  const int n = ts.n();
  const int r = ts.r();
  Rng rng(seed);

  Verdict v;
  v.provenance = "pooled-pair-split-analysis";
  if (n < r) {
    v.klass = IdentClass::Structural;
    return v;
  }

  std::vector<int> subset(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) subset[static_cast<size_t>(i)] = i;
  std::vector<PooledPairWitness> failure;
  while (true) {
    const SquareCheck check = check_rows(ts, subset, rng);
    if (check.identifiable) {
      v.klass = IdentClass::GenericOnly;
      for (const auto& w : check.pairs) v.witnesses.push_back(w);
      return v;
    }
    if (failure.empty() && !check.pairs.empty()) failure = check.pairs;
    int i = r - 1;
    while (i >= 0 && subset[static_cast<size_t>(i)] == n - r + i) --i;
    if (i < 0) break;
    ++subset[static_cast<size_t>(i)];
    for (int j = i + 1; j < r; ++j) subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
  }

  v.klass = IdentClass::Structural;
  for (const auto& w : failure) v.witnesses.push_back(w);
  return v;
}

}  // namespace typeident
