#include <doctest.h>

#include "models.hpp"
#include "typeident/linalg.hpp"
#include "typeident/nullspace.hpp"
#include "typeident/rng.hpp"
#include "typeident/typestate.hpp"

using namespace typeident;
using namespace typeident::testmodels;
namespace la = typeident::linalg;

namespace {

RatMatrix mat(std::vector<std::vector<std::string>> rows) {
  RatMatrix out;
  for (const auto& row : rows) out.push_back(rationals(row));
  return out;
}

TypeStateModel three_by_three(int i, int j) {
  // state choices encoded base-3: digit t = choice of type t
  std::vector<std::vector<int>> choice(3, std::vector<int>(2));
  for (int t = 0; t < 3; ++t) {
    const int pow = t == 0 ? 1 : t == 1 ? 3 : 9;
    choice[static_cast<size_t>(t)][0] = (i / pow) % 3;
    choice[static_cast<size_t>(t)][1] = (j / pow) % 3;
  }
  return make_typestate({"x", "y", "z"}, {"t1", "t2", "t3"}, {"a", "b"}, choice);
}

// Direct 3x3 conditions: every pair separated by some state, and every
// alternative chosen somewhere.
bool pairwise_separated_and_covered(const TypeStateModel& ts) {
  for (int t1 = 0; t1 < ts.r(); ++t1)
    for (int t2 = t1 + 1; t2 < ts.r(); ++t2) {
      bool separated = false;
      for (int a = 0; a < ts.num_states(); ++a)
        separated = separated || ts.choice[static_cast<size_t>(t1)][static_cast<size_t>(a)] !=
                                     ts.choice[static_cast<size_t>(t2)][static_cast<size_t>(a)];
      if (!separated) return false;
    }
  for (int k = 0; k < ts.n(); ++k) {
    bool chosen = false;
    for (int t = 0; t < ts.r(); ++t)
      for (int a = 0; a < ts.num_states(); ++a)
        chosen = chosen || ts.choice[static_cast<size_t>(t)][static_cast<size_t>(a)] == k;
    if (!chosen) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("nullspace of state matrices") {
  SUBCASE("identical one-hot columns share the difference direction") {
    const auto ts = pooled_2x2_model();
    const auto ns = nullspace(one_hot_matrix(ts, 0));
    REQUIRE(ns.dim() == 1);
    CHECK(ns.basis[0] == rationals({"1", "-1"}));
  }
  SUBCASE("identity matrix has trivial nullspace") {
    CHECK(nullspace(mat({{"1", "0"}, {"0", "1"}})).trivial());
  }
  SUBCASE("cancelling-usage assembly at equal weights") {
    const auto m = assemble_matrix(cancelling_usage_model(), rationals({"1/2", "1/2"}));
    const auto ns = nullspace(m);
    REQUIRE(ns.dim() == 1);
    CHECK(ns.basis[0] == rationals({"1", "-1", "-1", "1"}));
  }
}

TEST_CASE("nullspace intersections") {
  SUBCASE("pooled pair shows up on the column side") {
    const auto ts = pooled_both_states_model();
    const auto both = nullspace_intersection(nullspace(one_hot_matrix(ts, 0)),
                                             nullspace(one_hot_matrix(ts, 1)));
    REQUIRE(both.dim() == 1);
    CHECK(both.basis[0] == rationals({"1", "-1", "0"}));
  }
  SUBCASE("never-chosen alternative shows up on the transpose side") {
    const auto ts = never_chosen_row_model();
    const auto both =
        nullspace_intersection(nullspace(la::transpose(one_hot_matrix(ts, 0))),
                               nullspace(la::transpose(one_hot_matrix(ts, 1))));
    REQUIRE(both.dim() == 1);
    CHECK(both.basis[0] == rationals({"0", "0", "1"}));
  }
  SUBCASE("complementary states have trivial intersections on both sides") {
    const auto ts = complementary_states_model();
    const auto col = nullspace_intersection(nullspace(one_hot_matrix(ts, 0)),
                                            nullspace(one_hot_matrix(ts, 1)));
    const auto row =
        nullspace_intersection(nullspace(la::transpose(one_hot_matrix(ts, 0))),
                               nullspace(la::transpose(one_hot_matrix(ts, 1))));
    CHECK(col.trivial());
    CHECK(row.trivial());
  }
  SUBCASE("dimension mismatch is rejected") {
    RationalSubspace a{2, {rationals({"1", "0"})}};
    RationalSubspace b{3, {rationals({"1", "0", "0"})}};
    CHECK_THROWS_AS(nullspace_intersection(a, b), std::invalid_argument);
  }
}

TEST_CASE("shared nullspace vectors kill the assembly at every weight") {
  const auto ts = pooled_both_states_model();
  const auto shared = nullspace_intersection(nullspace(one_hot_matrix(ts, 0)),
                                             nullspace(one_hot_matrix(ts, 1)));
  REQUIRE_FALSE(shared.trivial());
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_simplex_point(rng, 2, 1000);
    const auto m = assemble_matrix(ts, f);
    for (const auto& q : la::mat_vec(m.values, shared.basis[0])) CHECK(q == 0);
  }
}

TEST_CASE("typical_split_test on the 4x4 split example") {
  const auto ts = typical_split_model();
  const auto m = assemble_matrix(ts, rationals({"1/2", "1/2"}));
  const SplitVector split{1, 2};  // alternatives x and y

  CHECK(typical_split_test(m, split, {2, 3}));
  CHECK(typical_split_test(m, split, {0, 1}));
  CHECK_FALSE(typical_split_test(m, split, {0}));
  CHECK_THROWS_AS(typical_split_test(m, split, {}), std::invalid_argument);

  SUBCASE("invertible matrix: every split typical of the full type set") {
    const auto sal = assemble_matrix(salience_model(), rationals({"1/2", "1/2"}));
    CHECK(typical_split_test(sal, SplitVector{0, 3}, {0, 1, 2, 3}));
  }
}

TEST_CASE("verdict_nullspace on the worked models") {
  CHECK(verdict_nullspace(complementary_states_model()).klass == IdentClass::GenericOnly);
  CHECK(verdict_nullspace(pooled_both_states_model()).klass == IdentClass::Structural);
  CHECK(verdict_nullspace(typical_split_model()).klass == IdentClass::Structural);
  // pairwise separation holds here, yet one alternative is never chosen
  CHECK(verdict_nullspace(never_chosen_row_model()).klass == IdentClass::Structural);
  CHECK(verdict_nullspace(separating_state_model()).klass == IdentClass::GenericOnly);

  SUBCASE("witnesses describe the failing pair") {
    const auto v = verdict_nullspace(pooled_both_states_model());
    REQUIRE_FALSE(v.witnesses.empty());
    const auto& w = std::get<PooledPairWitness>(v.witnesses.front());
    CHECK(w.type_1 == 0);
    CHECK(w.type_2 == 1);
    CHECK_FALSE(w.separated_by_b);
  }
  SUBCASE("two states are required") {
    const auto ts = make_typestate({"x", "y"}, {"t1", "t2"}, {"a"}, {{0}, {1}});
    CHECK_THROWS_AS(verdict_nullspace(ts), std::invalid_argument);
  }
}

TEST_CASE("2x2 characterization: identifiable iff some state separates") {
  for (int c1a = 0; c1a < 2; ++c1a)
    for (int c2a = 0; c2a < 2; ++c2a)
      for (int c1b = 0; c1b < 2; ++c1b)
        for (int c2b = 0; c2b < 2; ++c2b) {
          const auto ts = two_by_two(c1a, c2a, c1b, c2b);
          const bool separates = !separating_states(ts).empty();
          const auto v = verdict_nullspace(ts, 7);
          CHECK((v.klass == IdentClass::GenericOnly) == separates);
        }
}

TEST_CASE("exhaustive 3x3 sweep: nullspace verdict, direct condition, usage classes") {
  for (int i = 0; i < 27; ++i) {
    for (int j = 0; j < 27; ++j) {
      const auto ts = three_by_three(i, j);
      const bool via_nullspace = verdict_nullspace(ts, 11).klass == IdentClass::GenericOnly;
      const bool via_direct = pairwise_separated_and_covered(ts);
      const bool via_usage =
          verdict_typestate_generic(ts).klass == IdentClass::GenericOnly;
      CAPTURE(i);
      CAPTURE(j);
      CHECK(via_nullspace == via_direct);
      CHECK(via_nullspace == via_usage);
    }
  }
}

TEST_CASE("rectangular inputs: disjunction over row subsets") {
  // two types over three alternatives, separated in state a only
  auto ts = make_typestate({"x1", "x2", "x3"}, {"t1", "t2"}, {"a", "b"},
                           {{0, 2}, {1, 2}});
  CHECK(verdict_nullspace(ts).klass == IdentClass::GenericOnly);

  // both states pool: structural regardless of the subset
  auto pooled = make_typestate({"x1", "x2", "x3"}, {"t1", "t2"}, {"a", "b"},
                               {{0, 2}, {0, 2}});
  CHECK(verdict_nullspace(pooled).klass == IdentClass::Structural);

  SUBCASE("agrees with the usage-class verdict on random rectangular models") {
    Rng rng(77);
    for (int trial = 0; trial < 120; ++trial) {
      Rng sub = rng.fork(static_cast<std::uint64_t>(trial));
      const int r = 2 + static_cast<int>(sub.below(2));
      const int n = r + 1 + static_cast<int>(sub.below(2));
      TypeStateModel model;
      for (int k = 0; k < n; ++k) model.alternatives.push_back("x" + std::to_string(k));
      for (int t = 0; t < r; ++t) model.types.push_back("t" + std::to_string(t));
      model.states = {"a", "b"};
      model.choice.assign(static_cast<size_t>(r), std::vector<int>(2));
      for (auto& row : model.choice)
        for (auto& c : row) c = static_cast<int>(sub.below(static_cast<std::uint64_t>(n)));
      const bool via_nullspace =
          verdict_nullspace(model, sub.next()).klass == IdentClass::GenericOnly;
      const bool via_usage =
          verdict_typestate_generic(model).klass == IdentClass::GenericOnly;
      CAPTURE(trial);
      CHECK(via_nullspace == via_usage);
    }
  }
}

TEST_CASE("cross-cancellation probe: equality achievable exactly when the verdict fails") {
  // For models whose state nullspaces are one-dimensional, a failing
  // verdict must produce x, y, z with M z = M^a y + M^b x and z
  // orthogonal to both; a passing verdict must not, at sampled weights.
  Rng rng(99);
  for (const auto& ts : {typical_split_model(), complementary_states_model()}) {
    const bool identifiable = verdict_nullspace(ts, 5).klass == IdentClass::GenericOnly;
    const auto ma = one_hot_matrix(ts, 0);
    const auto mb = one_hot_matrix(ts, 1);
    const auto na = nullspace(ma);
    const auto nb = nullspace(mb);
    REQUIRE(na.dim() == 1);
    REQUIRE(nb.dim() == 1);
    const RatVector& x = na.basis[0];
    const RatVector& y = nb.basis[0];

    bool equality_achievable = false;
    for (int i = 0; i < 10 && !equality_achievable; ++i) {
      const auto f = random_simplex_point(rng, 2, 1000);
      const auto m = assemble_matrix(ts, f);
      // Unknowns (z, alpha, beta): M z = alpha*M^b x + beta*M^a y with
      // z orthogonal to x and y; the nullspace vectors scale freely, so
      // the scalars are solved for rather than fixed.
      const size_t n = m.values.size();
      const RatVector bx = la::mat_vec(mb, x);
      const RatVector ay = la::mat_vec(ma, y);
      RatMatrix system;
      for (size_t k = 0; k < n; ++k) {
        RatVector row = m.values[k];
        row.push_back(-bx[k]);
        row.push_back(-ay[k]);
        system.push_back(std::move(row));
      }
      RatVector x_row = x, y_row = y;
      x_row.push_back(Rational(0));
      x_row.push_back(Rational(0));
      y_row.push_back(Rational(0));
      y_row.push_back(Rational(0));
      system.push_back(std::move(x_row));
      system.push_back(std::move(y_row));
      const RatMatrix kernel = la::kernel_basis(system);
      bool alpha_free = false, beta_free = false;
      const size_t cols = x.size();
      for (const auto& v : kernel) {
        alpha_free = alpha_free || v[cols] != 0;
        beta_free = beta_free || v[cols + 1] != 0;
      }
      equality_achievable = alpha_free && beta_free;
    }
    CHECK(equality_achievable == !identifiable);
  }
}
