#include <doctest.h>

#include "models.hpp"
#include "typeident/errors.hpp"
#include "typeident/matching.hpp"
#include "typeident/recovery.hpp"
#include "typeident/rng.hpp"

using namespace typeident;
using namespace typeident::testmodels;

namespace {

// Valid random pattern: each type gets a nonempty allowed set.
PossibilityPattern random_pattern(Rng& rng, int n, int r) {
  PossibilityPattern p;
  for (int k = 0; k < n; ++k) p.alternatives.push_back("x" + std::to_string(k + 1));
  for (int t = 0; t < r; ++t) p.types.push_back("t" + std::to_string(t + 1));
  p.allowed.assign(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(r), false));
  for (int t = 0; t < r; ++t) {
    bool any = false;
    for (int k = 0; k < n; ++k) {
      const bool bit = rng.below(100) < 45;
      p.allowed[static_cast<size_t>(k)][static_cast<size_t>(t)] = bit;
      any = any || bit;
    }
    if (!any) p.allowed[rng.below(static_cast<std::uint64_t>(n))][static_cast<size_t>(t)] = true;
  }
  return p;
}

std::vector<int> all_rows(int r) {
  std::vector<int> rows(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) rows[static_cast<size_t>(i)] = i;
  return rows;
}

}  // namespace

TEST_CASE("max_matching on the worked patterns") {
  SUBCASE("forced unique matching") {
    const auto mm = max_matching(unique_matching_pattern());
    CHECK(mm.size == 3);
    REQUIRE(mm.matching);
    CHECK(mm.matching->assignment == std::vector<int>{0, 2, 1});  // t1->x, t2->z, t3->y
    CHECK(mm.matching->parity == -1);
  }
  SUBCASE("deficient pair caps the matching at two") {
    const auto mm = max_matching(deficient_pair_pattern());
    CHECK(mm.size == 2);
    CHECK_FALSE(mm.matching);
  }
  SUBCASE("identity pattern forces the diagonal") {
    const auto p = make_pattern({"x", "y", "z"}, {"t1", "t2", "t3"},
                                {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    const auto mm = max_matching(p);
    CHECK(mm.size == 3);
    CHECK(mm.matching->assignment == std::vector<int>{0, 1, 2});
    CHECK(mm.matching->parity == 1);
  }
}

TEST_CASE("enumerate_matchings") {
  SUBCASE("unique matching, odd parity") {
    const auto ms = enumerate_matchings(unique_matching_pattern(), all_rows(3));
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].assignment == std::vector<int>{0, 2, 1});
    CHECK(ms[0].parity == -1);
  }
  SUBCASE("augmented pattern has three matchings, parities odd/odd/even") {
    const auto ms = enumerate_matchings(augmented_pattern(), all_rows(3));
    REQUIRE(ms.size() == 3);
    CHECK(ms[0].assignment == std::vector<int>{0, 2, 1});
    CHECK(ms[0].parity == -1);
    CHECK(ms[1].assignment == std::vector<int>{1, 0, 2});
    CHECK(ms[1].parity == -1);
    CHECK(ms[2].assignment == std::vector<int>{1, 2, 0});
    CHECK(ms[2].parity == 1);
  }
  SUBCASE("2x2 all-allowed yields opposite parities") {
    const auto p = make_pattern({"x", "y"}, {"t1", "t2"}, {{1, 1}, {1, 1}});
    const auto ms = enumerate_matchings(p, all_rows(2));
    REQUIRE(ms.size() == 2);
    CHECK(ms[0].parity + ms[1].parity == 0);
  }
  SUBCASE("cap refusal names the fallback") {
    Rng rng(1);
    const auto p = random_pattern(rng, 9, 9);
    CHECK_THROWS_AS(enumerate_matchings(p, all_rows(9)), CapExceededError);
  }
}

TEST_CASE("square_stats on the worked patterns") {
  SUBCASE("unique matching: permanent 1, signed -1") {
    const auto stats = square_stats(unique_matching_pattern(), all_rows(3));
    CHECK(stats.permanent == 1);
    CHECK(stats.signed_count == -1);
  }
  SUBCASE("all-allowed 3x3: permanent 6, signed 0") {
    const auto p = make_pattern({"x", "y", "z"}, {"t1", "t2", "t3"},
                                {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
    const auto stats = square_stats(p, all_rows(3));
    CHECK(stats.permanent == 6);
    CHECK(stats.signed_count == 0);
  }
  SUBCASE("upper-triangular 4x4: permanent 1, signed +1") {
    const auto stats = square_stats(upper_triangular_pattern(4), all_rows(4));
    CHECK(stats.permanent == 1);
    CHECK(stats.signed_count == 1);
  }
}

TEST_CASE("verdict_general trichotomy") {
  SUBCASE("unique matching is global") {
    const auto v = verdict_general(unique_matching_pattern());
    CHECK(v.klass == IdentClass::Global);
    CHECK(v.provenance == "unique-matching");
    const auto& w = std::get<RowSubsetWitness>(v.witnesses.front());
    CHECK(w.matching.assignment == std::vector<int>{0, 2, 1});
    CHECK(verify_matching(unique_matching_pattern(),
                          Matching{w.matching.assignment, w.matching.parity}));
  }
  SUBCASE("augmented pattern is generic only") {
    const auto v = verdict_general(augmented_pattern());
    CHECK(v.klass == IdentClass::GenericOnly);
    bool found_pair = false;
    for (const auto& w : v.witnesses) {
      if (const auto* pair = std::get_if<OppositeParityPairWitness>(&w)) {
        found_pair = true;
        CHECK(pair->first.parity != pair->second.parity);
      }
    }
    CHECK(found_pair);
  }
  SUBCASE("deficient pair is structural with witness {t1,t2} -> {x}") {
    const auto v = verdict_general(deficient_pair_pattern());
    CHECK(v.klass == IdentClass::Structural);
    const auto& w = std::get<DeficientSetWitness>(v.witnesses.front());
    CHECK(w.types == std::vector<int>{0, 1});
    CHECK(w.neighborhood == std::vector<int>{0});
    CHECK(verify_deficient_set(deficient_pair_pattern(), w.types));
  }
  SUBCASE("more types than alternatives is structural") {
    const auto p = make_pattern({"x", "y"}, {"t1", "t2", "t3"},
                                {{1, 1, 1}, {1, 1, 1}});
    CHECK(verdict_general(p).klass == IdentClass::Structural);
  }
  SUBCASE("staircase pattern: full matching but both parities") {
    CHECK(verdict_general(staircase_pattern()).klass == IdentClass::GenericOnly);
  }
  SUBCASE("upper-triangular is global") {
    CHECK(verdict_general(upper_triangular_pattern(4)).klass == IdentClass::Global);
  }
}

TEST_CASE("oracle equivalence: permanent and signed count vs enumeration") {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    Rng sub = rng.fork(static_cast<std::uint64_t>(trial));
    const int r = 2 + static_cast<int>(sub.below(5));
    const int n = r;
    const auto p = random_pattern(sub, n, r);
    const auto stats = square_stats(p, all_rows(r));
    const auto ms = enumerate_matchings(p, all_rows(r));
    long long net = 0;
    for (const auto& m : ms) net += m.parity;
    CHECK(stats.permanent == static_cast<long long>(ms.size()));
    CHECK(stats.signed_count == net);
  }
}

TEST_CASE("matching witnesses re-verify and structural patterns have zero minors") {
  Rng rng(33);
  int structural_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Rng sub = rng.fork(static_cast<std::uint64_t>(trial));
    const int r = 2 + static_cast<int>(sub.below(3));
    const int n = r + static_cast<int>(sub.below(2));
    const auto p = random_pattern(sub, n, r);
    const auto v = verdict_general(p);
    if (v.klass == IdentClass::Structural) {
      ++structural_seen;
      const auto& w = std::get<DeficientSetWitness>(v.witnesses.front());
      CHECK(verify_deficient_set(p, w.types));
      // every instantiation is rank deficient
      const auto report = montecarlo_rank(Occasion{p}, 25, sub.next());
      CHECK(report.full_rank_fraction == 0.0);
    } else if (v.klass == IdentClass::Global) {
      const auto report = montecarlo_rank(Occasion{p}, 25, sub.next());
      CHECK(report.full_rank_fraction == 1.0);
    }
  }
  CHECK(structural_seen > 0);
}
