#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "qls/latin.hpp"
#include "qls/verify.hpp"

using namespace qls;

TEST_CASE("from_grid basics") {
  const LatinSquare one = LatinSquare::from_grid({{0}});
  CHECK(one.order() == 1);
  CHECK(one.sym_at(0, 0) == 0);

  const LatinSquare z2 = LatinSquare::from_grid({{0, 1}, {1, 0}});
  CHECK(z2 == group_square("Z2"));

  CHECK_THROWS_WITH_AS(LatinSquare::from_grid({{0, 1}, {0, 1}}),
                       doctest::Contains("col 0"), Error);
  CHECK_THROWS_AS(LatinSquare::from_grid({{0, 0}, {1, 1}}), Error);
  CHECK_THROWS_AS(LatinSquare::from_grid({{0, 2}, {2, 0}}), Error);
}

TEST_CASE("lookup tables are mutually consistent") {
  for (const std::string& name : {"Z5", "S3", "D4", "Q8", "A4"}) {
    const LatinSquare L = group_square(name);
    L.validate();
    const int n = L.order();
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) CHECK(L.sym_at(r, L.col_of(r, s)) == s);
    for (int c = 0; c < n; ++c)
      for (int s = 0; s < n; ++s) CHECK(L.sym_at(L.row_of(c, s), c) == s);
  }
}

TEST_CASE("cayley_table closure and catalog identification") {
  const auto z3 = cayley_table({{1, 2, 0}});
  CHECK(z3.square.order() == 3);
  REQUIRE(z3.spec.has_value());
  CHECK(z3.spec->irrep_dims == std::vector<int>{1, 1, 1});

  const auto trivial = cayley_table({{0, 1, 2}});
  CHECK(trivial.square.order() == 1);

  const auto a5 = cayley_table({{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}});
  CHECK(a5.square.order() == 60);
  REQUIRE(a5.spec.has_value());
  CHECK(a5.spec->irrep_dims == std::vector<int>{1, 3, 3, 4, 5});

  const auto s3 = cayley_table({{1, 2, 0}, {1, 0, 2}});
  REQUIRE(s3.spec.has_value());
  CHECK(s3.spec->name == "S3");

  CHECK_THROWS_AS(cayley_table({{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}}, 30), Error);
}

TEST_CASE("Q8 table structure") {
  const LatinSquare q8 = group_square("Q8");
  CHECK(q8.order() == 8);
  q8.validate();

  // the regular representation (table rows as permutations) regenerates it
  Perm pi(8), pj(8);
  for (int x = 0; x < 8; ++x) {
    pi[x] = q8.sym_at(2, x);
    pj[x] = q8.sym_at(4, x);
  }
  const auto from_perms = cayley_table({pi, pj});
  CHECK(from_perms.square.order() == 8);
  REQUIRE(from_perms.spec.has_value());
  CHECK(from_perms.spec->name == "Q8");
  // element orders: 1, one involution (-1), six elements of order 4
  std::map<int, int> orders;
  for (int i = 0; i < 8; ++i) {
    int ord = 1, x = i;
    while (x != 0) {
      x = q8.sym_at(x, i);
      ++ord;
    }
    orders[ord]++;
  }
  CHECK(orders[1] == 1);
  CHECK(orders[2] == 1);
  CHECK(orders[4] == 6);
}

TEST_CASE("transversal counts against the permutation oracle") {
  CHECK(count_transversals(group_square("Z2")) == 0);
  CHECK(count_transversals(group_square("Z3")) == 3);
  CHECK(count_transversals(group_square("Z5")) == 15);
  CHECK(count_transversals(group_square("Z7")) == 133);
  CHECK(transversal_count_oracle(group_square("Z5")) == 15);
  CHECK(transversal_count_oracle(group_square("Z7")) == 133);

  // classical odd-cyclic values; n = 9 checked by both routes
  CHECK(count_transversals(group_square("Z9")) == 2025);
  CHECK(transversal_count_oracle(group_square("Z9")) == 2025);
  CHECK(count_transversals(group_square("Z11")) == 37851);
  CHECK(count_transversals(group_square("Z13")) == 1030367);

  for (int n = 1; n <= 5; ++n)
    for (int i = 0; i < 8; ++i) {
      const LatinSquare L = jm_sample(n, jm_default_steps(n), 100 + i);
      CHECK(count_transversals(L) == transversal_count_oracle(L));
    }
}

TEST_CASE("transversal count cap") {
  CHECK_THROWS_AS(count_transversals(jm_sample(4, 100, 1), 3), Error);
}

TEST_CASE("transversal asymptotic") {
  const auto a1 = transversal_asymptotic(1);
  CHECK(a1.exact_ratio == 1);
  CHECK(a1.value == doctest::Approx(std::exp(-0.5)));

  const auto a7 = transversal_asymptotic(7);
  CHECK(a7.exact_ratio == rat_parse("25401600/823543"));
  CHECK(a7.value == doctest::Approx(18.707).epsilon(1e-3));

  const auto a11 = transversal_asymptotic(11);
  CHECK(a11.value == doctest::Approx(3388.0).epsilon(1e-3));
}

TEST_CASE("jm_sample basics") {
  CHECK(jm_sample(1, 12345, 42).order() == 1);

  const LatinSquare a = jm_sample(4, 100000, 7);
  a.validate();
  CHECK(a == jm_sample(4, 100000, 7));

  const LatinSquare b = jm_sample(6, jm_default_steps(6), 9);
  b.validate();
}

TEST_CASE("jm_sample distribution over the 576 squares of order 4") {
  const auto all = oracles::all_latin_squares(4);
  REQUIRE(all.size() == 576);
  std::map<std::string, int> index;
  for (size_t i = 0; i < all.size(); ++i) index[all[i].to_text()] = static_cast<int>(i);

  const int per_square = 100;
  const int samples = 576 * per_square;
  std::vector<int> hits(all.size(), 0);
  const std::uint64_t steps = jm_default_steps(4);
  for (int i = 0; i < samples; ++i) {
    const LatinSquare L = jm_sample(4, steps, 1000003ULL + i);
    ++hits[index.at(L.to_text())];
  }
  // seeded, deterministic chi-square test: the statistic should sit within
  // three of its own standard deviations around df = 575 under uniformity
  const double expected = per_square;
  double chi2 = 0;
  for (int h : hits) chi2 += (h - expected) * (h - expected) / expected;
  const double df = 575;
  CHECK(std::abs(chi2 - df) < 3 * std::sqrt(2 * df));
}

TEST_CASE("text format round trip") {
  const LatinSquare L = group_square("S3");
  const LatinSquare back = LatinSquare::from_text(L.to_text());
  CHECK(L == back);
  CHECK_THROWS_AS(LatinSquare::from_text("2\n0 1\n1"), Error);
}
