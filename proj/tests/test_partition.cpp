#include <doctest.h>

#include "oracles.hpp"
#include "qls/partition.hpp"

using namespace qls;

TEST_CASE("enumeration counts match Bell numbers") {
  const auto bell = oracles::bell_numbers(8);
  for (int m = 0; m <= 8; ++m)
    CHECK(Int(static_cast<long>(enumerate_partitions(m).size())) == bell[m]);

  CHECK(enumerate_partitions(4).size() == 15);
  CHECK(enumerate_partitions(4, 2, true).size() == 3);  // perfect matchings of a 4-set
  CHECK(enumerate_partitions(0).size() == 1);
  CHECK_THROWS_AS(enumerate_partitions(13), Error);
}

TEST_CASE("rgs validation") {
  CHECK_THROWS_AS(Partition({1, 0}), Error);
  CHECK_THROWS_AS(Partition({0, 2}), Error);
  CHECK(Partition({0, 1, 0}).cell_count() == 2);
}

TEST_CASE("partition algebra") {
  const auto d3 = partition_algebra(Partition::discrete(3));
  CHECK(d3.rank == 0);
  CHECK(d3.mobius == 1);
  CHECK(d3.support.empty());

  const auto whole = partition_algebra(Partition::indiscrete(3));
  CHECK(whole.rank == 2);
  CHECK(whole.mobius == 2);  // (-1)^2 * 2!

  const auto m22 = partition_algebra(Partition::from_cells(4, {{0, 1}, {2, 3}}));
  CHECK(m22.rank == 2);
  CHECK(m22.mobius == 1);
  CHECK(m22.is_matching);

  CHECK_FALSE(partition_algebra(Partition::from_cells(3, {{0, 1}, {2}})).is_matching);
}

TEST_CASE("meet and join") {
  const Partition a = Partition::from_cells(3, {{0, 1}, {2}});
  const Partition b = Partition::from_cells(3, {{0}, {1, 2}});
  const auto [m, j] = std::pair{meet(a, b), join(a, b)};
  CHECK(m == Partition::discrete(3));
  CHECK(j == Partition::indiscrete(3));

  CHECK(meet(a, a) == a);
  CHECK(join(a, a) == a);
  CHECK(meet(Partition::discrete(3), a) == Partition::discrete(3));
  CHECK(join(Partition::discrete(3), a) == a);

  CHECK_THROWS_AS(meet(a, Partition::discrete(4)), Error);
}

TEST_CASE("kernel") {
  CHECK(kernel({5, 5, 7}, {0, 1, 2}) == Partition::from_cells(3, {{0, 1}, {2}}));
  CHECK(kernel({1, 2, 3}, {0, 1, 2}) == Partition::discrete(3));
  CHECK(kernel({4, 4, 4, 4}, {0, 1, 2, 3}).rank() == 3);
  CHECK(kernel({9, 8, 9}, {0, 2}) == Partition::indiscrete(2));
  CHECK(kernel({1, 2, 3}, {}) == Partition(std::vector<int>{}));
}

TEST_CASE("sigma weights") {
  CHECK(sigma_weight(Partition::discrete(3), Rat(1, 4)) == Rat(1, 64));
  CHECK(sigma_weight(Partition::indiscrete(3), Rat(1, 2)) == 2);
  CHECK(sigma_weight(Partition::from_cells(3, {{0, 1}, {2}}), Rat(1, 2)) == Rat(1, 2));
  CHECK_THROWS_AS(sigma_weight(Partition::discrete(2), Rat(3, 2)), Error);
}

TEST_CASE("restrict and embed") {
  const Partition p = Partition::from_cells(4, {{0, 3}, {1}, {2}});
  CHECK(p.restrict_to({0, 3}) == Partition::indiscrete(2));
  const Partition e = p.embed(6, {1, 2, 4, 5});
  CHECK(e.ground_size() == 6);
  CHECK(e.rank() == p.rank());
  CHECK(e.cell_of(1) == e.cell_of(5));
}

TEST_CASE("exponential formula") {
  CHECK(exp_formula_check(2, {Rat(1), Rat(1)}).lhs == 2);
  CHECK(exp_formula_check(2, {Rat(1), Rat(1)}).equal);
  const auto invol = exp_formula_check(4, {Rat(1), Rat(1), Rat(0), Rat(0)});
  CHECK(invol.lhs == 10);
  CHECK(invol.equal);
  CHECK(exp_formula_check(0, {}).equal);
  CHECK(exp_formula_check(6, {Rat(1, 2), Rat(-2), Rat(3), Rat(0), Rat(1, 7), Rat(5)}).equal);
}

TEST_CASE("partition breaking inequalities") {
  // single 4-cell, cells <= 3: the singleton-free refinements already give 3
  const auto r4 = breaking_check(4, Rat(1, 2), 1);
  CHECK(r4.lhs == 3);
  CHECK(r4.rhs >= 3);
  CHECK(r4.holds);

  // lhs is one of the summands, so it trivially holds; the full sum also
  // carries a delta^2 term from the discrete refinement
  const auto r2 = breaking_check(2, Rat(1, 2), 1);
  CHECK(r2.lhs == 1);
  CHECK(r2.rhs == Rat(5, 4));
  CHECK(r2.holds);

  const auto r3v3 = breaking_check(3, Rat(1), 3);
  CHECK(r3v3.lhs == 2);
  CHECK(r3v3.holds);

  for (int r = 1; r <= 8; ++r)
    for (int variant : {1, 2, 3})
      CHECK(breaking_check(r, Rat(1, 10), variant).holds);

  CHECK_THROWS_AS(breaking_check(3, Rat(2), 1), Error);
  CHECK_THROWS_AS(breaking_check(3, Rat(1, 2), 4), Error);
}
