#include <doctest.h>

#include "models.hpp"
#include "typeident/linalg.hpp"
#include "typeident/rng.hpp"

using namespace typeident;
using namespace typeident::testmodels;
namespace la = typeident::linalg;

namespace {

RatMatrix mat(std::vector<std::vector<std::string>> rows) {
  RatMatrix out;
  for (const auto& row : rows) out.push_back(rationals(row));
  return out;
}

RatMatrix random_matrix(Rng& rng, int n, int m, long grid) {
  RatMatrix out(static_cast<size_t>(n), RatVector(static_cast<size_t>(m)));
  for (auto& row : out)
    for (auto& q : row) q = make_rational(rng.range(-grid, grid), rng.range(1, grid));
  return out;
}

}  // namespace

TEST_CASE("determinant and rank basics") {
  CHECK(la::determinant(mat({{"1", "2"}, {"3", "4"}})) == -2);
  CHECK(la::determinant(mat({{"1", "2"}, {"2", "4"}})) == 0);
  CHECK(la::rank(mat({{"1", "2"}, {"2", "4"}})) == 1);
  CHECK(la::rank(mat({{"1", "0", "1"}, {"0", "1", "1"}})) == 2);
}

TEST_CASE("kernel basis is canonical and annihilates the matrix") {
  const RatMatrix m = mat({{"1", "1", "0", "0"}, {"0", "0", "1", "1"}});
  const RatMatrix kernel = la::kernel_basis(m);
  REQUIRE(kernel.size() == 2);
  for (const auto& v : kernel) {
    for (const auto& q : la::mat_vec(m, v)) CHECK(q == 0);
  }
  // canonical form: leading ones in pivot order
  CHECK(kernel[0][0] == 1);
  CHECK(kernel[1][2] == 1);

  SUBCASE("dimension law dim(kernel) + rank = columns") {
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      const RatMatrix a = random_matrix(rng, 3 + static_cast<int>(rng.below(3)),
                                        3 + static_cast<int>(rng.below(3)), 20);
      const int cols = static_cast<int>(a[0].size());
      CHECK(static_cast<int>(la::kernel_basis(a).size()) + la::rank(a) == cols);
    }
  }

  SUBCASE("canonical form is basis independent") {
    Rng rng(9);
    const RatMatrix base = la::kernel_basis(m);
    // random invertible recombination of the basis rows
    RatMatrix shuffled = base;
    shuffled[0] = {base[0][0] * 3 + base[1][0] * 2, base[0][1] * 3 + base[1][1] * 2,
                   base[0][2] * 3 + base[1][2] * 2, base[0][3] * 3 + base[1][3] * 2};
    CHECK(la::canonical_basis(shuffled) == base);
  }
}

TEST_CASE("subspace intersection") {
  const RatMatrix a = mat({{"1", "0", "0"}, {"0", "1", "0"}});  // span{e1,e2}
  const RatMatrix b = mat({{"0", "1", "0"}, {"0", "0", "1"}});  // span{e2,e3}
  const RatMatrix both = la::subspace_intersection(a, b, 3);
  REQUIRE(both.size() == 1);
  CHECK(both[0] == rationals({"0", "1", "0"}));

  const RatMatrix disjoint = la::subspace_intersection(mat({{"1", "0", "0"}}),
                                                       mat({{"0", "0", "1"}}), 3);
  CHECK(disjoint.empty());
}

TEST_CASE("linear solve") {
  const RatMatrix m = mat({{"1", "1"}, {"0", "1"}});
  const auto sol = la::solve(m, rationals({"3", "1"}));
  REQUIRE(sol.consistent);
  CHECK(sol.particular == rationals({"2", "1"}));
  CHECK(sol.kernel.empty());

  SUBCASE("inconsistent system detected") {
    const RatMatrix s = mat({{"1", "1"}, {"2", "2"}});
    CHECK_FALSE(la::solve(s, rationals({"1", "3"})).consistent);
  }
  SUBCASE("underdetermined system returns a kernel") {
    const RatMatrix s = mat({{"1", "1", "1"}});
    const auto under = la::solve(s, rationals({"1"}));
    REQUIRE(under.consistent);
    CHECK(under.kernel.size() == 2);
    for (const auto& q : la::mat_vec(s, under.particular)) CHECK(q == 1);
  }
  SUBCASE("random square systems solve exactly") {
    Rng rng(13);
    for (int trial = 0; trial < 25; ++trial) {
      const RatMatrix a = random_matrix(rng, 4, 4, 30);
      RatVector x(4);
      for (auto& q : x) q = make_rational(rng.range(-9, 9), rng.range(1, 9));
      const auto sol2 = la::solve(a, la::mat_vec(a, x));
      REQUIRE(sol2.consistent);
      if (sol2.kernel.empty()) CHECK(sol2.particular == x);
      CHECK(la::mat_vec(a, sol2.particular) == la::mat_vec(a, x));
    }
  }
}

TEST_CASE("column span membership") {
  const RatMatrix m = mat({{"1", "0", "2"}, {"0", "1", "2"}, {"0", "0", "0"}});
  CHECK(la::in_column_span(m, {0, 1}, rationals({"3", "5", "0"})));
  CHECK_FALSE(la::in_column_span(m, {0, 1}, rationals({"0", "0", "1"})));
  CHECK(la::in_column_span(m, {2}, rationals({"1", "1", "0"})));
}

TEST_CASE("kruskal column rank") {
  CHECK(la::kruskal_column_rank(mat({{"1", "0"}, {"0", "1"}})) == 2);
  // two proportional columns: every single column nonzero, some pair dependent
  CHECK(la::kruskal_column_rank(mat({{"1", "2", "0"}, {"0", "0", "1"}})) == 1);
  // zero column
  CHECK(la::kruskal_column_rank(mat({{"0", "1"}, {"0", "0"}})) == 0);
  // full-rank 3x3
  CHECK(la::kruskal_column_rank(mat({{"1", "1", "0"}, {"0", "1", "1"}, {"1", "0", "1"}})) == 3);
}
