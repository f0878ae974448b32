#include "typeident/tensorid.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "typeident/errors.hpp"
#include "typeident/linalg.hpp"
#include "typeident/matching.hpp"
#include "typeident/recovery.hpp"
#include "typeident/typestate.hpp"

namespace typeident {

namespace {

PossibilityPattern occasion_pattern(const Occasion& occasion) {
  if (const auto* p = std::get_if<PossibilityPattern>(&occasion)) return *p;
  return induced_pattern(std::get<TypeStateModel>(occasion));
}

std::string occasion_label(int j) { return "occasion " + std::to_string(j + 1); }

}  // namespace

MatchabilityIndex matchability_index(const PossibilityPattern& pattern) {
  MatchabilityIndex index;
  // Hall: a v-subset is unmatchable iff it contains a deficient subset, so
  // v is one less than the smallest deficiency.
  if (max_matching(pattern).size == pattern.r()) {
    index.v = pattern.r();
    return index;
  }
  DeficientSetWitness w;
  w.types = hall_deficient_set(pattern);
  w.neighborhood = neighborhood(pattern, w.types);
  index.v = static_cast<int>(w.types.size()) - 1;
  index.deficient = std::move(w);
  return index;
}

Verdict verdict_three_occasion(const MultiOccasionModel& model) {
  if (model.J() != 3) {
    throw std::invalid_argument("verdict_three_occasion: exactly three occasions required");
  }
  const int r = model.r();
  MatchabilityWitness w;
  w.required = 2 * r + 2;
  int total = 0;
  for (int j = 0; j < 3; ++j) {
    const MatchabilityIndex index = matchability_index(occasion_pattern(model.occasions[static_cast<size_t>(j)]));
    w.v.push_back(index.v);
    total += index.v;
  }

  Verdict v;
  v.provenance = "matchability-sum";
  v.witnesses.push_back(w);
  if (total >= w.required) {
    v.klass = IdentClass::GenericOnly;
    v.note = "type distribution and occasion matrices identifiable up to label swapping";
  } else {
    v.klass = IdentClass::Inconclusive;
    v.note = "matchability sum " + std::to_string(total) + " below " + std::to_string(w.required) +
             "; the condition is sufficient only";
  }
  return v;
}

Verdict verdict_typestate_three_occasion(const MultiOccasionModel& model) {
  if (model.J() != 3) {
    throw std::invalid_argument("verdict_typestate_three_occasion: exactly three occasions required");
  }
  const int r = model.r();
  Verdict v;
  v.provenance = "per-occasion-generic";
  if (r == 1) {
    v.klass = IdentClass::GenericOnly;
    v.note = "single type";
    return v;
  }
  for (int j = 0; j < 3; ++j) {
    const auto* ts = std::get_if<TypeStateModel>(&model.occasions[static_cast<size_t>(j)]);
    if (!ts) {
      throw std::invalid_argument("verdict_typestate_three_occasion: " + occasion_label(j) +
                                  " is not a type-state model");
    }
    const Verdict occasion_verdict = verdict_typestate_generic(*ts);
    if (occasion_verdict.klass == IdentClass::Structural) {
      v.klass = IdentClass::Inconclusive;
      v.note = occasion_label(j) + " fails the generic type-state condition";
      for (const auto& w : occasion_verdict.witnesses) v.witnesses.push_back(w);
      return v;
    }
  }
  v.klass = IdentClass::GenericOnly;
  v.note = "type distribution and occasion matrices identifiable up to label swapping";
  return v;
}

int kruskal_rank_sampled(const Occasion& occasion, std::uint64_t seed, int samples) {
  const PossibilityPattern pattern = occasion_pattern(occasion);
  if (pattern.r() > config::kPermanentCap) {
    throw CapExceededError("kruskal_rank_sampled: too many types");
  }
  int bound = pattern.r();
  for (int i = 0; i < samples; ++i) {
    Rng rng = Rng(seed).fork(static_cast<std::uint64_t>(i));
    const ConcreteMatrix m = sample_occasion_matrix(occasion, rng);
    bound = std::min(bound, linalg::kruskal_column_rank(m.values));
  }
  return bound;
}

TensorParameters canonicalize_columns(TensorParameters params) {
  const int r = static_cast<int>(params.pi.size());
  std::vector<int> order(static_cast<size_t>(r));
  std::iota(order.begin(), order.end(), 0);
  const auto key_less = [&](int a, int b) {
    for (const auto& values : params.occasion_values) {
      for (const auto& row : values) {
        if (row[static_cast<size_t>(a)] != row[static_cast<size_t>(b)]) return row[static_cast<size_t>(a)] < row[static_cast<size_t>(b)];
      }
    }
    return params.pi[static_cast<size_t>(a)] < params.pi[static_cast<size_t>(b)];
  };
  std::sort(order.begin(), order.end(), key_less);

  TensorParameters out;
  out.pi.resize(static_cast<size_t>(r));
  for (const auto& values : params.occasion_values) {
    RatMatrix permuted(values.size(), RatVector(static_cast<size_t>(r)));
    for (size_t i = 0; i < values.size(); ++i)
      for (int h = 0; h < r; ++h) permuted[i][static_cast<size_t>(h)] = values[i][static_cast<size_t>(order[static_cast<size_t>(h)])];
    out.occasion_values.push_back(std::move(permuted));
  }
  for (int h = 0; h < r; ++h) out.pi[static_cast<size_t>(h)] = params.pi[static_cast<size_t>(order[static_cast<size_t>(h)])];
  return out;
}

ProbeReport distinguishability_probe(const MultiOccasionModel& model, std::uint64_t seed,
                                     int trials) {
  if (model.J() != 3) {
    throw std::invalid_argument("distinguishability_probe: exactly three occasions required");
  }
  ProbeReport report;
  report.trials = trials;
  const int r = model.r();

  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng_a = rng.fork(2 * static_cast<std::uint64_t>(trial));
    Rng rng_b = rng.fork(2 * static_cast<std::uint64_t>(trial) + 1);

    const auto draw = [&](Rng& local) {
      TensorParameters params;
      std::array<ConcreteMatrix, 3> matrices;
      for (int j = 0; j < 3; ++j) {
        matrices[static_cast<size_t>(j)] = sample_occasion_matrix(model.occasions[static_cast<size_t>(j)], local);
        params.occasion_values.push_back(matrices[static_cast<size_t>(j)].values);
      }
      params.pi = random_simplex_point(local, r, config::kGridDenominator);
      TypeDistribution pi{params.pi};
      return std::make_pair(params, build_tensor(matrices, pi));
    };

    const auto [params_a, tensor_a] = draw(rng_a);
    const auto [params_b, tensor_b] = draw(rng_b);

    const TensorParameters canon_a = canonicalize_columns(params_a);
    const TensorParameters canon_b = canonicalize_columns(params_b);
    const bool equivalent = canon_a.pi == canon_b.pi && canon_a.occasion_values == canon_b.occasion_values;
    if (equivalent) continue;  // permutation-equivalent parameters carry no information

    Rational distance(0);
    for (size_t i = 0; i < tensor_a.entries.size(); ++i) {
      const Rational diff = abs(tensor_a.entries[i] - tensor_b.entries[i]);
      if (diff > distance) distance = diff;
    }
    if (distance == 0) ++report.collisions;
    if (!report.min_distance_valid || distance < report.min_distance) {
      report.min_distance = distance;
      report.min_distance_valid = true;
    }
  }
  return report;
}

}  // namespace typeident
